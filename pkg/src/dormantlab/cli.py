"""Command-line interface: a thin client over the HTTP service.

By default each command spins up the service in-process (ASGI transport,
no sockets); --server points the same client at a remote instance.  Exit
codes: 0 ok, 2 bad input, 3 internal error, 4 I/O failure, 5 cross-check
mismatch, 6 violated mathematical precondition.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import httpx

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INTERNAL = 3
EXIT_IO = 4
EXIT_MISMATCH = 5
EXIT_PRECONDITION = 6

_PRECONDITION_CODES = {"NotDormant", "IncompatibleOddPart", "CasimirSingular"}


class CliFailure(Exception):
    def __init__(self, exit_code: int, message: str):
        super().__init__(message)
        self.exit_code = exit_code


def _client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service.app import app

    # sync httpx client speaking ASGI to the app in-process, no sockets
    return TestClient(app, raise_server_exceptions=False)


def _post(client: httpx.Client, path: str, payload: dict) -> dict:
    try:
        resp = client.post(path, json=payload)
    except httpx.HTTPError as exc:
        raise CliFailure(EXIT_INTERNAL, f"service unreachable: {exc}")
    if resp.status_code == 200:
        return resp.json()
    if resp.status_code == 422:
        raise CliFailure(EXIT_INPUT, f"invalid request: {resp.text}")
    try:
        err = resp.json()["error"]
        code, message = err["code"], err["message"]
    except (KeyError, ValueError):
        raise CliFailure(EXIT_INTERNAL, f"malformed error response: {resp.text}")
    if resp.status_code == 409 or code in _PRECONDITION_CODES:
        raise CliFailure(EXIT_PRECONDITION, f"{code}: {message}")
    if resp.status_code == 400:
        raise CliFailure(EXIT_INPUT, f"{code}: {message}")
    raise CliFailure(EXIT_INTERNAL, f"{code}: {message}")


def _parse_coeffs(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")] if text.strip() else [0]
    except ValueError:
        raise CliFailure(EXIT_INPUT, f"cannot parse coefficient list {text!r}")


# ---------------------------------------------------------------------------
# commands


def cmd_pcurvature(args, client) -> int:
    pots = [_parse_coeffs(t) for t in args.potentials.split(";")]
    if args.rank is not None and args.rank != len(pots) + 1:
        raise CliFailure(
            EXIT_INPUT, f"--rank {args.rank} does not match {len(pots)} potentials"
        )
    out = _post(client, "/pcurvature", {"p": args.p, "potentials": pots})
    if args.json:
        print(json.dumps(out, indent=2))
    elif out["dormant"]:
        print("psi: zero")
        print("dormant: true")
    else:
        print("psi:")
        for row in out["psi"]:
            print("  " + "  ".join(_fmt_rational(e) for e in row))
        print("dormant: false")
    return EXIT_OK


def _fmt_rational(entry: dict) -> str:
    num, den = entry["num"], entry["den"]
    if den == [1]:
        return str(num)
    return f"{num}/{den}"


def cmd_enumerate(args, client) -> int:
    out = _post(client, "/enumerate-sl2", {"p": args.p})
    doc = out["table"]
    text = json.dumps(doc, indent=2) + "\n"
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise CliFailure(EXIT_IO, f"cannot write {args.out}: {exc}")
    print(f"total: {out['total']}")
    for key, count in out["histogram"].items():
        print(f"  ({key}): {count}")
    return EXIT_OK


def cmd_degree(args, client) -> int:
    try:
        with open(args.table) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise CliFailure(EXIT_IO, f"cannot read {args.table}: {exc}")
    except json.JSONDecodeError as exc:
        raise CliFailure(EXIT_INPUT, f"{args.table} is not valid JSON: {exc}")
    rho = _parse_coeffs(args.rho) if args.rho else []
    if len(rho) != args.r:
        raise CliFailure(EXIT_INPUT, f"rho has length {len(rho)}, expected r={args.r}")
    out = _post(
        client,
        "/degree",
        {
            "table": doc,
            "g": args.g,
            "r": args.r,
            "rho": rho,
            "method": args.method,
            "seed": args.seed,
        },
    )
    value = out.get("character", out.get("graph"))
    print(value)
    if args.method == "both" and not out["agree"]:
        raise CliFailure(
            EXIT_MISMATCH,
            f"character degree {out['character']} != graph degrees {out['graph_values']}",
        )
    if args.method == "graph" and out.get("agree") is False:
        raise CliFailure(EXIT_MISMATCH, f"graphs disagree: {out['graph_values']}")
    return EXIT_OK


def cmd_profile(args, client) -> int:
    from .io import run_report

    base = _parse_coeffs(args.base)
    t0 = time.time()
    out = _post(
        client,
        "/profile",
        {"ell": args.ell, "p": args.p, "base": base, "witness": args.witness},
    )
    report = run_report(
        "profile",
        {"ell": args.ell, "p": args.p, "base": base, "witness": args.witness},
        out,
        time.time() - t0,
    )
    print(json.dumps(report, indent=2))
    return EXIT_OK


def cmd_closed_form(args, client) -> int:
    if args.formula == "verlinde-sl2":
        out = _post(
            client, "/closed-form/verlinde-sl2", {"p": args.p, "g": args.g, "r": args.r}
        )
    else:
        if args.n is None:
            raise CliFailure(EXIT_INPUT, "joshi-sln requires --n")
        out = _post(
            client, "/closed-form/joshi-sln", {"p": args.p, "n": args.n, "g": args.g}
        )
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_serve(args, _client) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dormantlab", description="Dormant-oper computations on the 3-pointed line"
    )
    parser.add_argument("--server", default=None, help="URL of a running service (default: in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("pcurvature", help="p-curvature and dormancy of a companion oper")
    pc.add_argument("--rank", type=int, default=None)
    pc.add_argument("--potentials", required=True, help="f_2;...;f_n, each a comma-separated ascending coefficient list")
    pc.add_argument("--p", type=int, required=True)
    pc.add_argument("--json", action="store_true")
    pc.set_defaults(func=cmd_pcurvature)

    en = sub.add_parser("enumerate-sl2", help="enumerate dormant rank-2 opers, write an N-table")
    en.add_argument("--p", type=int, required=True)
    en.add_argument("--out", default=None)
    en.set_defaults(func=cmd_enumerate)

    dg = sub.add_parser("degree", help="Verlinde-type degree from a stored N-table")
    dg.add_argument("--table", required=True)
    dg.add_argument("--g", type=int, required=True)
    dg.add_argument("--r", type=int, required=True)
    dg.add_argument("--rho", default="", help="comma-separated labels, length r")
    dg.add_argument("--method", choices=("character", "graph", "both"), default="character")
    dg.add_argument("--seed", type=int, default=0)
    dg.set_defaults(func=cmd_degree)

    pf = sub.add_parser("profile", help="kernel/image profiles of a symmetric-power witness")
    pf.add_argument("--ell", type=int, required=True)
    pf.add_argument("--p", type=int, required=True)
    pf.add_argument("--witness", choices=("sym",), default="sym")
    pf.add_argument("--base", required=True, help="comma-separated ascending coefficients of f_2")
    pf.set_defaults(func=cmd_profile)

    cf = sub.add_parser("closed-form", help="closed-form degree formulas")
    cf.add_argument("formula", choices=("verlinde-sl2", "joshi-sln"))
    cf.add_argument("--p", type=int, required=True)
    cf.add_argument("--g", type=int, required=True)
    cf.add_argument("--r", type=int, default=0)
    cf.add_argument("--n", type=int, default=None)
    cf.set_defaults(func=cmd_closed_form)

    sv = sub.add_parser("serve", help="run the HTTP service")
    sv.add_argument("--host", default="127.0.0.1")
    sv.add_argument("--port", type=int, default=8000)
    sv.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.func is cmd_serve:
            return args.func(args, None)
        with _client(args.server) as client:
            return args.func(args, client)
    except CliFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())

"""HTTP service layer over the core package."""

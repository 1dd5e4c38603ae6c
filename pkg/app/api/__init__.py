"""HTTP API routers package."""

"""MTL toolkit application package."""

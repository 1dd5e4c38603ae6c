"""Memristive threshold logic cell model."""

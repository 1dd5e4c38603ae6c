"""Calibrated area, power, transistor and delay models."""

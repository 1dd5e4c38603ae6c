"""SI-suffixed number strings as they appear in measurement tables."""

import re

from app.errors import CalibrationFormatError

SI_EXPONENTS = {"z": -21, "a": -18, "f": -15, "p": -12, "n": -9, "u": -6, "m": -3, "": 0}
_ALIASES = {"µ": "u", "μ": "u"}
_PATTERN = re.compile(r"^\s*([+-]?(?:\d+\.?\d*|\.\d+))\s*([zafpnuµμm]?)\s*$")


def parse_si(text: str | float) -> float:
    """``"16.32p"`` -> 1.632e-11, exactly as ``float("16.32e-12")``."""
    if isinstance(text, int | float):
        return float(text)
    if not isinstance(text, str):
        raise CalibrationFormatError(f"expected a number or SI string, got {text!r}")
    match = _PATTERN.match(text)
    if match is None:
        raise CalibrationFormatError(f"cannot parse {text!r} as an SI quantity")
    mantissa, suffix = match.groups()
    return float(f"{mantissa}e{SI_EXPONENTS[_ALIASES.get(suffix, suffix)]}")


def format_si(value: float, digits: int = 2) -> str:
    """Shortest-suffix rendering with ``digits`` decimals, e.g. ``3.00u``."""
    if value == 0:
        return f"{0:.{digits}f}"
    magnitude = abs(value)
    for suffix, exponent in sorted(SI_EXPONENTS.items(), key=lambda kv: -kv[1]):
        if magnitude >= 10.0**exponent * (1 - 0.5 * 10.0**-digits):
            return f"{value / 10.0**exponent:.{digits}f}{suffix}"
    return f"{value / 1e-21:.{digits}f}z"

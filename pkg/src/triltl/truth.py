"""Kleene truth values: true, false, and unknown."""

from __future__ import annotations

import enum


class Truth(enum.Enum):
    """One of the three truth values. UNKNOWN encodes "unspecified"."""

    TRUE = "top"
    FALSE = "bot"
    UNKNOWN = "uu"

    def negate(self) -> "Truth":
        """Swap TRUE and FALSE; UNKNOWN is its own negation."""
        if self is Truth.TRUE:
            return Truth.FALSE
        if self is Truth.FALSE:
            return Truth.TRUE
        return Truth.UNKNOWN

    @property
    def token(self) -> str:
        """Canonical uppercase token used on the command line."""
        return _TOKENS[self]


_TOKENS = {Truth.TRUE: "TRUE", Truth.FALSE: "FALSE", Truth.UNKNOWN: "UNDEF"}

_ALIASES = {
    "top": Truth.TRUE,
    "t": Truth.TRUE,
    "true": Truth.TRUE,
    "bot": Truth.FALSE,
    "f": Truth.FALSE,
    "false": Truth.FALSE,
    "uu": Truth.UNKNOWN,
    "u": Truth.UNKNOWN,
    "undef": Truth.UNKNOWN,
}


def parse_truth(token: str) -> Truth:
    """Parse a truth-value token; accepts top/t/true, bot/f/false, uu/u/undef."""
    try:
        return _ALIASES[token.strip().lower()]
    except KeyError:
        raise ValueError(
            f"unknown truth value {token!r}; expected one of top, bot, uu"
        ) from None

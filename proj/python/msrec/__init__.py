"""Many-sorted recognizable tree languages."""

from ._msrec import (
    Hyperderivor,
    MsrecError,
    Recognizer,
    combine,
    complement,
    equivalent,
    inverse_translation,
    iterate,
    load,
    load_hyperderivor,
    loads,
    minimize,
    quotient,
    recognize_terms,
    restrict_to_sort,
    run_cli,
    substitute,
    trim,
)

__all__ = [
    "Hyperderivor",
    "MsrecError",
    "Recognizer",
    "combine",
    "complement",
    "equivalent",
    "inverse_translation",
    "iterate",
    "load",
    "load_hyperderivor",
    "loads",
    "minimize",
    "quotient",
    "recognize_terms",
    "restrict_to_sort",
    "run_cli",
    "substitute",
    "trim",
]

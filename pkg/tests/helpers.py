"""Shared test helpers: form construction from strings and published data."""

from nilrigid.fileformat import build_form, parse_source


def form_of(model, text):
    """Build a Form over a model from the file-format expression grammar."""
    header = "generators " + " ".join(g.name for g in model.generators)
    af = parse_source(header + "\nform " + text)
    return build_form(af.forms[0][0], model)


def forms_of(model, texts):
    return [form_of(model, t) for t in texts]


# Previously published degree-3 class lists for the theorem2 family,
# keyed by (k, which differential).
LISTED_CLASSES = {
    (2, "d"): [
        "x4^x5^n2 + x1^n1^n2 - x2^x3^m",
        "x4^x5^n1 - x3^n1^n3 - x1^x2^m",
        "x3^n2^n3",
        "x3^n1^n2 + x1^x5^n3 - x1^x3^m",
        "x2^n1^n2",
        "x1^n1^n2 + x2^x5^n3 - x2^x3^m",
    ],
    (2, "bar"): [
        "x3^n2^n3",
        "x3^n1^n3 + x1^x2^m",
        "x3^n1^n2 - x1^x3^m",
        "x2^n1^n2",
        "- x1^n1^n2 + x2^x3^m",
    ],
    (3, "d"): [
        "x6^x7^n4 + x1^n1^n4 + x2^n2^n4 + x3^n3^n4 - x4^x5^m",
        "x6^x7^n3 + x1^n1^n3 + x2^n2^n3 - x5^n3^n5 - x3^x4^m",
        "x6^x7^n2 + x1^n1^n2 - x4^n2^n4 - x5^n2^n5 - x2^x3^m",
        "x6^x7^n1 - x3^n1^n3 - x4^n1^n4 - x5^n1^n5 - x1^x2^m",
        "x5^n4^n5",
        "x4^n3^n4",
        "x1^n1^n4 + x2^n2^n4 + x3^n3^n4 + x4^x7^n5 - x4^x5^m",
        "x3^n2^n3",
        "x2^n1^n2",
    ],
    (3, "bar"): [
        "x5^n4^n5",
        "- x1^n1^n3 - x2^n2^n3 + x5^n3^n5 + x3^x4^m",
        "- x1^n1^n2 + x4^n2^n4 + x5^n2^n5 + x2^x3^m",
        "x3^n1^n3 + x4^n1^n4 + x5^n1^n5 + x1^x2^m",
        "x4^n3^n4",
        "- x1^n1^n4 - x2^n2^n4 - x3^n3^n4 + x4^x5^m",
        "x3^n2^n3",
        "x2^n1^n2",
    ],
}

# Published degree-3 generator counts the lists were meant to support.
PUBLISHED_COUNTS = {
    (2, "d"): 6,
    (2, "bar"): 5,
    (3, "d"): 9,
    (3, "bar"): 8,
}

# The displayed cohomology ring generator map for the five-dimensional pair,
# as (source class, image class) expression pairs.
SECTION3_RING_MAP = [
    ("a1", "a1"),
    ("a2", "a2"),
    ("a2^b", "a2^b"),
    ("b^c - a2^d", "b^c - a2^d"),
    ("a1^b^c", "a1^b^c"),
    ("a1^c^d", "a1^c^d - a2^b^d"),
    ("a1^b^c^d", "a1^b^c^d"),
]

# The same map completed by the omitted degree-2 generator [a1^d] (whose
# only closed representative in the second model is a1^d + a2^c).
SECTION3_RING_MAP_COMPLETED = SECTION3_RING_MAP[:4] + [
    ("a1^d", "a1^d + a2^c"),
] + SECTION3_RING_MAP[4:]

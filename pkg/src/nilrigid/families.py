"""Constructors for the worked example families.

Generator names follow the sources these models are usually written with
(x_i, n_i, m and a1, a2, b, c, d) so CLI reports stay easy to compare by eye.
"""

from __future__ import annotations

from .forms import Form, Generator, SullivanModel


def _model(spec, differential_builder):
    gens = tuple(Generator(name, i, w) for i, (name, w) in enumerate(spec))
    index = {g.name: g.index for g in gens}
    diffs = {name: terms for name, terms in differential_builder(index).items()}
    differential = []
    for g in gens:
        terms = diffs.get(g.name, {})
        differential.append(Form(gens, terms))
    return SullivanModel(gens, differential)


def theorem1_family(k: int) -> SullivanModel:
    """Graded family: x_1..x_2k, n_1..n_2k-1, m with d m = sum x_i n_i."""
    if k < 1:
        raise ValueError("need k >= 1")
    spec = [(f"x{i}", 0) for i in range(1, 2 * k + 1)]
    spec += [(f"n{i}", 1) for i in range(1, 2 * k)]
    spec += [("m", 2)]

    def build(ix):
        d = {}
        for i in range(1, 2 * k):
            d[f"n{i}"] = {(ix[f"x{i}"], ix[f"x{i + 1}"]): 1}
        d["m"] = {(ix[f"x{i}"], ix[f"n{i}"]): 1 for i in range(1, 2 * k)}
        return d

    return _model(spec, build)


def theorem2_family(k: int) -> SullivanModel:
    """Non-graded variant: one extra x_2k+1 and d m ending in x_2k x_2k+1."""
    if k < 2:
        raise ValueError("need k >= 2")
    spec = [(f"x{i}", 0) for i in range(1, 2 * k + 2)]
    spec += [(f"n{i}", 1) for i in range(1, 2 * k)]
    spec += [("m", 2)]

    def build(ix):
        d = {}
        for i in range(1, 2 * k):
            d[f"n{i}"] = {(ix[f"x{i}"], ix[f"x{i + 1}"]): 1}
        dm = {(ix[f"x{i}"], ix[f"n{i}"]): 1 for i in range(1, 2 * k)}
        dm[(ix[f"x{2 * k}"], ix[f"x{2 * k + 1}"])] = 1
        d["m"] = dm
        return d

    return _model(spec, build)


def theorem4_example() -> SullivanModel:
    """The 10-dimensional non-graded example on 4 + 5 + 1 generators."""
    spec = [(f"x{i}", 0) for i in range(1, 5)]
    spec += [(f"n{i}", 1) for i in range(1, 6)]
    spec += [("m", 2)]

    def build(ix):
        return {
            "n1": {(ix["x1"], ix["x2"]): 1},
            "n2": {(ix["x1"], ix["x3"]): 1},
            "n3": {(ix["x2"], ix["x3"]): 1},
            "n4": {(ix["x1"], ix["x4"]): 1},
            "n5": {(ix["x2"], ix["x4"]): 1},
            "m": {
                (ix["x1"], ix["n1"]): 1,
                (ix["x1"], ix["n2"]): 1,
                (ix["x2"], ix["n3"]): 1,
                (ix["x3"], ix["x4"]): 1,
            },
        }

    return _model(spec, build)


def section3_pair() -> tuple[SullivanModel, SullivanModel]:
    """Two 5-dimensional 4-stage models differing only in d of the top
    generator; the second's associated graded model is the first."""
    spec = [("a1", 0), ("a2", 0), ("b", 1), ("c", 2), ("d", 3)]

    def build_first(ix):
        return {
            "b": {(ix["a1"], ix["a2"]): 1},
            "c": {(ix["a1"], ix["b"]): 1},
            "d": {(ix["a1"], ix["c"]): 1},
        }

    def build_second(ix):
        return {
            "b": {(ix["a1"], ix["a2"]): 1},
            "c": {(ix["a1"], ix["b"]): 1},
            "d": {(ix["a1"], ix["c"]): 1, (ix["a2"], ix["b"]): 1},
        }

    return _model(spec, build_first), _model(spec, build_second)

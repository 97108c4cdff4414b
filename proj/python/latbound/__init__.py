"""Word metrics, geodesic rays and quasi-isometries of Z^2.

Points are (x, y) tuples of ints or Fractions, rays are digit literals such as "1(001)".
Exact results come back as int or Fraction.
"""

from fractions import Fraction

from . import _latbound

__all__ = [
    "word_metric", "bfs_metric", "geodesic_count", "enumerate_geodesics", "is_geodesic_word",
    "generating_set_lipschitz", "canonicalize", "validate", "digit_at", "point_at", "n_map",
    "b_map", "digitize", "direction_of", "are_asymptotic", "divergence_time", "splice",
    "ball_contains", "floor_map", "check_embedding", "find_violation", "roundtrip_displacement",
    "ell1_distance", "is_geodesic_polyline", "check_monotone_commitment", "splice_plane",
    "project_to_lattice", "cone_lengths", "run_cli",
]


def _num(value):
    return str(Fraction(value)) if not isinstance(value, str) else value


def _point(p):
    if isinstance(p, str):
        return p
    x, y = p
    return f"{_num(x)},{_num(y)}"


def _exact(text):
    value = Fraction(text)
    return value.numerator if value.denominator == 1 else value


def _unpoint(text):
    x, y = text.split(",")
    return (_exact(x), _exact(y))


def _gens(generators):
    if generators is None or generators == "standard":
        return "standard"
    if isinstance(generators, str):
        return generators
    return ";".join(f"{x},{y}" for x, y in generators)


def _k_squared(k=None, k_squared=None):
    if (k is None) == (k_squared is None):
        raise ValueError("give exactly one of k and k_squared")
    return _num(Fraction(k) ** 2) if k is not None else _num(k_squared)


def _polyline(path):
    if isinstance(path, str):
        return path
    vertices, direction = path
    text = ";".join(_point(v) for v in vertices)
    if direction is not None:
        text += f" >{direction[0]}/{direction[1]}"
    return text


def word_metric(p, q):
    return int(_latbound.word_metric(_point(p), _point(q)))


def bfs_metric(generators, p, q, radius_cap=64):
    return _latbound.bfs_metric(_gens(generators), _point(p), _point(q), radius_cap)


def geodesic_count(p, q):
    return int(_latbound.geodesic_count(_point(p), _point(q)))


def enumerate_geodesics(p, q, limit=None):
    return _latbound.enumerate_geodesics(_point(p), _point(q), 2**64 - 1 if limit is None else limit)


def is_geodesic_word(word):
    return _latbound.is_geodesic_word(word)


def generating_set_lipschitz(generators, other, radius_cap=64):
    return _latbound.generating_set_lipschitz(_gens(generators), _gens(other), radius_cap)


def canonicalize(ray):
    return _latbound.canonicalize(ray)


def validate(ray):
    return _latbound.validate(ray)


def digit_at(ray, n):
    return _latbound.digit_at(ray, n)


def point_at(ray, t):
    return _unpoint(_latbound.point_at(ray, t))


def n_map(ray, bits=64):
    """Exact Fraction for periodic rays, otherwise a (lo, hi) enclosure."""
    value = _latbound.n_map(ray, bits)
    if isinstance(value, tuple):
        return (Fraction(value[0]), Fraction(value[1]))
    return Fraction(value)


def b_map(sequence):
    return Fraction(_latbound.b_map(sequence))


def digitize(dx, dy=None):
    """digitize(2, 1) or digitize("1,sqrt(2)")."""
    text = dx if dy is None else f"{dx},{dy}"
    return _latbound.digitize(text)


def direction_of(ray):
    return _latbound.direction_of(ray)


def are_asymptotic(f, g, threshold=10):
    verdict = _latbound.are_asymptotic(f, g, threshold)
    if "bound" in verdict:
        verdict["bound"] = int(verdict["bound"])
    return verdict


def divergence_time(f, g, threshold=10, horizon=1_000_000):
    return _latbound.divergence_time(f, g, threshold, horizon)


def splice(f, g, s):
    return _latbound.splice(f, g, s)


def ball_contains(center, candidate, a, b, epsilon):
    return _latbound.ball_contains(center, candidate, _num(a), _num(b), _num(epsilon))


def floor_map(p):
    return _unpoint(_latbound.floor_map(_point(p)))


def check_embedding(pairs, map="floor", k=None, k_squared=None, c=0, generators=None, other=None):
    report = _latbound.check_embedding(
        map, _k_squared(k, k_squared), _num(c), [(_point(p), _point(q)) for p, q in pairs],
        _gens(generators), _gens(other))
    for v in report["violations"]:
        v["p"], v["q"] = _unpoint(v["p"]), _unpoint(v["q"])
    return report


def find_violation(map="floor", k=None, k_squared=None, c=0, strategy="diagonal-ray", budget=1000, seed=0):
    v = _latbound.find_violation(map, _k_squared(k, k_squared), _num(c), strategy, budget, seed)
    if v is not None:
        v["p"], v["q"] = _unpoint(v["p"]), _unpoint(v["q"])
    return v


def roundtrip_displacement(points):
    return _exact(_latbound.roundtrip_displacement([_point(p) for p in points]))


def ell1_distance(p, q):
    return _exact(_latbound.ell1_distance(_point(p), _point(q)))


def is_geodesic_polyline(path):
    """path is "0,0;1,1 >1/0" or (vertices, direction or None)."""
    return _latbound.is_geodesic_polyline(_polyline(path))


def check_monotone_commitment(path):
    t = _latbound.check_monotone_commitment(_polyline(path))
    return None if t is None else _exact(t)


def splice_plane(f, g, b):
    ray, bound = _latbound.splice_plane(_polyline(f), _polyline(g), _num(b))
    return ray, _exact(bound)


def project_to_lattice(path):
    return _latbound.project_to_lattice(_polyline(path))


def cone_lengths(epsilon):
    out = _latbound.cone_lengths(_num(epsilon))
    out["through"] = tuple(Fraction(x) for x in out["through"])
    out["around"] = tuple(Fraction(x) for x in out["around"])
    return out


def run_cli(*args):
    """Runs the command-line tool in process; returns (exit code, stdout, stderr)."""
    return _latbound.run_cli([str(a) for a in args])

"""Random instances and the cross-validation harness."""

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from itertools import product

from .build import program_ideal, program_rmodule
from .depth import (
    check_depth_inequality, check_fdim_bounds, depth_formula, depth_oracle_ext,
    depth_oracle_koszul, dummy_presentation, lambda_independence, lambda_set,
)
from .errors import DepthctlError, InputError, InternalError, UnsupportedFieldForDecomposition
from .field import Field
from .groebner import Ideal
from .modules import annihilator
from .parser import InputProgram
from .poly import Poly, Ring
from .primes import INF, min_primes

PROFILES = ("monomial-QQ", "monomial-GFp", "general-GFp")
VAR_NAMES = ("x", "y", "z", "w")


@dataclass(frozen=True)
class CorpusConfig:
    nvars: tuple = (3, 4)
    j_gens: tuple = (2, 4)
    j_degree: int = 3
    extra_gens: tuple = (0, 2)
    matrix_shape: tuple = (2, 3)
    matrix_degree: int = 2
    matrix_density: float = 0.6
    coker_probability: float = 0.35
    i_gens: tuple = (1, 3)
    i_degree: int = 2
    i_terms: tuple = (1, 3)
    constant_probability: float = 0.15
    prime: int = 32003
    point_grid: tuple = (0, 1, -1)


DEFAULT = CorpusConfig()


def _monomial(rng, n, lo, hi):
    d = rng.randint(lo, hi)
    e = [0] * n
    for _ in range(d):
        e[rng.randrange(n)] += 1
    return tuple(e)


def _coef(rng, field):
    if field.p:
        return rng.randrange(1, field.p)
    return rng.choice([-3, -2, -1, 1, 2, 3])


def _binomial(rng, ring, deg):
    n = ring.n
    a = _monomial(rng, n, 1, deg)
    b = a
    while b == a:
        b = _monomial(rng, n, 1, deg)
    return Poly(ring, {a: 1, b: -_coef(rng, ring.field)})


def _generator(rng, ring, profile, deg):
    if profile == "general-GFp" and rng.random() < 0.7:
        return _binomial(rng, ring, deg)
    return ring.monomial(_monomial(rng, ring.n, 1, deg))


def _random_poly(rng, ring, cfg):
    terms = {}
    for _ in range(rng.randint(*cfg.i_terms)):
        terms[_monomial(rng, ring.n, 1, cfg.i_degree)] = _coef(rng, ring.field)
    if rng.random() < cfg.constant_probability:
        terms[(0,) * ring.n] = _coef(rng, ring.field)
    f = Poly(ring, terms)
    return f if not f.is_zero() else ring.gen(0)


def gen_random_instance(seed, profile, cfg=DEFAULT):
    """Reproducible program declaring ideals ``J``, ``I`` and a module ``M`` killed by J."""
    if profile not in PROFILES:
        raise InputError(f"unknown profile {profile!r}; expected one of {', '.join(PROFILES)}")
    rng = random.Random(f"{profile}:{seed}")
    field = Field.QQ() if profile == "monomial-QQ" else Field.GF(cfg.prime)
    n = rng.randint(*cfg.nvars)
    ring = Ring(field, VAR_NAMES[:n])
    prog = InputProgram(ring)
    pos = iter(range(1, 100))

    def declare(table, name, value):
        table[name] = value
        prog.positions[name] = (next(pos), 1)

    while True:
        J = [_generator(rng, ring, profile, cfg.j_degree) for _ in range(rng.randint(*cfg.j_gens))]
        if not Ideal(ring, J).is_unit():
            break
    declare(prog.ideals, "J", J)
    if rng.random() < cfg.coker_probability:
        r, c = cfg.matrix_shape
        rows = []
        for _ in range(r):
            row = []
            for _ in range(c):
                if rng.random() < cfg.matrix_density:
                    row.append(ring.monomial(_monomial(rng, n, 0, cfg.matrix_degree)))
                else:
                    row.append(ring.zero())
            rows.append(row)
        for g in J:
            for k in range(r):
                for i, row in enumerate(rows):
                    row.append(g if i == k else ring.zero())
        declare(prog.modules, "M", ("coker", rows))
    else:
        extra = [_generator(rng, ring, profile, cfg.j_degree) for _ in range(rng.randint(*cfg.extra_gens))]
        declare(prog.ideals, "Q", J + extra)
        declare(prog.modules, "M", ("quot", "Q"))
    declare(prog.ideals, "I", [_random_poly(rng, ring, cfg) for _ in range(rng.randint(*cfg.i_gens))])
    return prog


def find_point(prog, ideals, rng, cfg=DEFAULT):
    """A random grid point on the common zero set of ``ideals``, or None."""
    ring = prog.ring
    gens = [g for I in ideals for g in I.gens]
    hits = [p for p in product(cfg.point_grid, repeat=ring.n)
            if all(g.evaluate([ring.field(a) for a in p]) == 0 for g in gens)]
    return list(rng.choice(hits)) if hits else None


def _num(v):
    return None if v == INF else int(v)


@dataclass
class InstanceReport:
    index: int
    seed: int
    program: str
    depth: dict = None
    lambda_size: int = None
    point: list = None
    properties: dict = None
    error: dict = None
    passed: bool = False


def verify_instance(seed, profile, index=0, cfg=DEFAULT):
    prog = gen_random_instance(seed, profile, cfg)
    rep = InstanceReport(index=index, seed=seed, program=prog.to_text())
    rng = random.Random(f"verify:{profile}:{seed}")
    try:
        M = program_rmodule(prog, "M", "J")
        I = program_ideal(prog, "I")
        df, dk, de = depth_formula(M, I), depth_oracle_koszul(M, I), depth_oracle_ext(M, I)
        rep.depth = {"formula": _num(df.value), "koszul": _num(dk.value), "ext": _num(de.value)}
        L = lambda_set(M)
        rep.lambda_size = len(L)
        props = {"agreement": df.value == dk.value == de.value}

        primes = {P.key: P for P in L.primes}
        if not M.is_zero():
            for P in min_primes(annihilator(M.M)):
                primes.setdefault(P.key, P)
        props["inequality"] = all(check_depth_inequality(M, I, P, dk.value) for P in primes.values())

        point = find_point(prog, [I, M.J], rng, cfg)
        rep.point = point
        props["fdim_bounds"] = None if point is None or M.is_zero() else check_fdim_bounds(M, I, point)

        M2, phi = dummy_presentation(M, _random_poly(rng, prog.ring, cfg))
        props["independence"] = lambda_independence(M, M2, phi)
        rep.properties = props
        rep.passed = all(v is not False for v in props.values())
    except DepthctlError as exc:
        rep.error = {"type": type(exc).__name__, "message": str(exc)}
    return rep


@dataclass
class VerifyReport:
    seed: int
    count: int
    profile: str
    instances: list
    passed: bool

    def to_dict(self):
        return {
            "seed": self.seed,
            "count": self.count,
            "profile": self.profile,
            "pass": self.passed,
            "instances": [_instance_dict(r) for r in self.instances],
        }

    def internal_failure(self):
        """An instance error the profile guarantees cannot happen."""
        for r in self.instances:
            if r.error and r.error["type"] in _INTERNAL:
                return True
        return False


_INTERNAL = {c.__name__ for c in (InternalError, UnsupportedFieldForDecomposition)} | {
    c.__name__ for c in InternalError.__subclasses__()}


def _instance_dict(r):
    d = asdict(r)
    d["pass"] = d.pop("passed")
    return d


def _run(args):
    return verify_instance(*args)


def verify_corpus(seed, count, profile, jobs=1, cfg=DEFAULT):
    if count < 1:
        raise InputError("count must be at least 1")
    if profile not in PROFILES:
        raise InputError(f"unknown profile {profile!r}; expected one of {', '.join(PROFILES)}")
    tasks = [(seed + k, profile, k, cfg) for k in range(count)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            reports = list(pool.map(_run, tasks))
    else:
        reports = [_run(t) for t in tasks]
    return VerifyReport(seed, count, profile, reports, all(r.passed for r in reports))

"""Turn parsed programs into ideals, modules and maps."""

from .depth import Presentation, RModule
from .errors import UnknownName
from .groebner import Ideal, RingMap
from .modules import FPModule, annihilator
from .primes import as_prime


def _lookup(table, name, what):
    if name not in table:
        raise UnknownName(f"no {what} named {name!r}")
    return table[name]


def program_ideal(prog, name):
    if name in prog.primes:
        return Ideal(prog.ring, prog.primes[name])
    return Ideal(prog.ring, _lookup(prog.ideals, name, "ideal"))


def program_prime(prog, name):
    """Declared primes are trusted, except monomial ones which are verified."""
    return as_prime(program_ideal(prog, name))


def program_fpmodule(prog, name):
    kind, body = _lookup(prog.modules, name, "module")
    if kind == "quot":
        return FPModule.quot(program_ideal(prog, body))
    return FPModule.coker(prog.ring, body)


def program_rmodule(prog, module, J=None, default="zero"):
    """The module ``module`` over ``S/J``.

    Without ``J`` the ambient ring is S itself (``default="zero"``) or
    ``S/Ann(M)`` (``default="ann"``).
    """
    M = program_fpmodule(prog, module)
    if J is not None:
        JI = program_ideal(prog, J)
    elif default == "ann":
        JI = annihilator(M)
    else:
        JI = Ideal(prog.ring, [])
    return RModule(Presentation(prog.ring, JI), M)


def program_map(prog, name, source):
    """Map ``source -> prog.ring`` declared as ``map name : v -> f, ...``."""
    return RingMap.from_pairs(source, prog.ring, _lookup(prog.maps, name, "map"))

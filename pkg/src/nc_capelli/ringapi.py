"""The ring contract shared by all algebra engines.

Every engine (scalars, weyl, pbw, swapalg) exposes elements that are
immutable values supporting ``+``, ``-``, unary ``-``, ``*``,
``is_zero()`` and ``scale(Coefficient)``; engines with a conjugation
additionally expose ``bar()``.  A :class:`Ring` instance bundles the
distinguished elements and conversions that generic code (matrices,
verifiers) needs, so matrix algorithms stay agnostic of the host.

Equality of elements is decided *only* through canonical normal forms:
``equal(x, y)`` is ``(x - y).is_zero()``.  There is no randomized
equality anywhere; every residual check is a proof-grade check.
"""

from __future__ import annotations

from .scalars import Coefficient


class Ring:
    """Bundle of ring capabilities used by generic matrix/verifier code."""

    def __init__(self, name, zero, one, from_coefficient=None, has_bar=False):
        self.name = name
        self.zero = zero
        self.one = one
        self._from_coefficient = from_coefficient
        self.has_bar = has_bar

    def from_coefficient(self, c):
        """Embed a scalar Coefficient as a ring element."""
        if not isinstance(c, Coefficient):
            c = Coefficient.from_rational(c)
        if self._from_coefficient is not None:
            return self._from_coefficient(c)
        return self.one.scale(c)

    def bar(self, x):
        if not self.has_bar:
            raise TypeError(f"ring {self.name} has no bar involution")
        return x.bar()

    def __repr__(self):
        return f"<Ring {self.name}>"


def equal(x, y):
    """True iff the canonical form of x - y is zero."""
    return (x - y).is_zero()


def commutator(x, y):
    """[x, y] = xy - yx."""
    return x * y - y * x


# The Coefficient type itself satisfies the element contract once given
# a scale method; it is its own coefficient ring.
def _coefficient_scale(self, c):
    return self * c


Coefficient.scale = _coefficient_scale

COEFFICIENT_RING = Ring(
    "coefficient",
    Coefficient.zero(),
    Coefficient.one(),
    from_coefficient=lambda c: c,
    has_bar=True,
)

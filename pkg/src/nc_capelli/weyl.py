"""Weyl algebra of polynomial-coefficient differential operators.

Generators come in pairs {x_g, d_g} over a fixed ordered list of real
variable names; elements are kept in Wick (normal) order: variables to
the left of derivatives, with [d_g, x_g] = 1.  Commutative polynomials
are the derivative-free subset.  Complex variables z = x + i*y and
d_z = (d_x - i*d_y)/2 are *derived* linear combinations, never
primitive generators — all bar-commutation relations between
holomorphic and antiholomorphic elements then hold automatically.
"""

from __future__ import annotations

from math import comb

from .ringapi import Ring
from .scalars import C_HALF, C_I, Coefficient, GaussianRational


class NotDivisible(Exception):
    """Raised when exact_divide finds a non-exact division."""


class GeneratorSet:
    """Ordered, immutable set of variable names.

    Names listed in ``laurent`` may carry negative exponents (a Laurent
    variable t with d_t * t^m = m*t^(m-1) + t^m*d_t for all integer m).
    This is unused by the identity suite but costs nothing to support.
    """

    def __init__(self, names, laurent=()):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        self.names = names
        self.index = {name: k for k, name in enumerate(names)}
        self.laurent = frozenset(laurent)
        for name in self.laurent:
            if name not in self.index:
                raise ValueError(f"laurent name {name!r} not a generator")
        self.n = len(names)
        self._zero_exp = (0,) * self.n

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return (
            isinstance(other, GeneratorSet)
            and self.names == other.names
            and self.laurent == other.laurent
        )

    def __hash__(self):
        return hash((self.names, self.laurent))

    def __repr__(self):
        return f"GeneratorSet({list(self.names)})"


_INT_COEFF_CACHE = {}


def _int_coeff(n):
    c = _INT_COEFF_CACHE.get(n)
    if c is None:
        c = Coefficient.from_rational(n)
        _INT_COEFF_CACHE[n] = c
    return c


def _falling(m, k):
    """Falling factorial m*(m-1)*...*(m-k+1); valid for negative m too."""
    out = 1
    for j in range(k):
        out *= m - j
    return out


class WeylElement:
    """Sparse normal-ordered sum: dict (varExp, derExp) -> Coefficient."""

    __slots__ = ("gens", "terms")

    def __init__(self, gens, terms=None):
        self.gens = gens
        self.terms = terms if terms is not None else {}

    # --- constructors -------------------------------------------------

    @staticmethod
    def zero(gens):
        return WeylElement(gens, {})

    @staticmethod
    def one(gens):
        return WeylElement(gens, {(gens._zero_exp, gens._zero_exp): Coefficient.one()})

    @staticmethod
    def variable(gens, name):
        v = list(gens._zero_exp)
        v[gens.index[name]] = 1
        return WeylElement(gens, {(tuple(v), gens._zero_exp): Coefficient.one()})

    @staticmethod
    def derivative(gens, name):
        d = list(gens._zero_exp)
        d[gens.index[name]] = 1
        return WeylElement(gens, {(gens._zero_exp, tuple(d)): Coefficient.one()})

    @staticmethod
    def from_coefficient(gens, c):
        if not isinstance(c, Coefficient):
            c = Coefficient.from_rational(c)
        if c.is_zero():
            return WeylElement(gens, {})
        return WeylElement(gens, {(gens._zero_exp, gens._zero_exp): c})

    # --- basic ring ops ----------------------------------------------

    def _require_same(self, other):
        if self.gens is not other.gens and self.gens != other.gens:
            raise ValueError("elements from different generator sets")

    def __add__(self, other):
        self._require_same(other)
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            cur = terms.get(mono)
            if cur is None:
                terms[mono] = c
            else:
                s = cur + c
                if s.is_zero():
                    del terms[mono]
                else:
                    terms[mono] = s
        return WeylElement(self.gens, terms)

    def __sub__(self, other):
        self._require_same(other)
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            cur = terms.get(mono)
            if cur is None:
                terms[mono] = -c
            else:
                s = cur - c
                if s.is_zero():
                    del terms[mono]
                else:
                    terms[mono] = s
        return WeylElement(self.gens, terms)

    def __neg__(self):
        return WeylElement(self.gens, {m: -c for m, c in self.terms.items()})

    def scale(self, c):
        if not isinstance(c, Coefficient):
            c = Coefficient.from_rational(c)
        if c.is_zero():
            return WeylElement(self.gens, {})
        terms = {}
        for mono, cur in self.terms.items():
            p = cur * c
            if not p.is_zero():
                terms[mono] = p
        return WeylElement(self.gens, terms)

    def bar(self):
        """Conjugation: generators are real, so bar acts on coefficients."""
        return WeylElement(
            self.gens, {m: c.bar() for m, c in self.terms.items()}
        )

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, WeylElement)
            and self.gens == other.gens
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.gens, frozenset(self.terms.keys())))

    # --- multiplication ----------------------------------------------

    def __mul__(self, other):
        """Normal-ordered product, expanding term by term with immediate
        renormalization and zero pruning.

        Left terms whose derivative part is empty or a single first-order
        d_g take a direct two-branch Leibniz step; everything else goes
        through the general _reorder expansion.
        """
        self._require_same(other)
        gens = self.gens
        if not gens.laurent:
            g1 = _const_values(self.terms)
            if g1 is not None:
                g2 = _const_values(other.terms)
                if g2 is not None:
                    return WeylElement(gens, _mul_const(gens, g1, g2))
        out = {}
        laurent_free = not gens.laurent
        for (v1, u1), c1 in self.terms.items():
            vsup = [(g, e) for g, e in enumerate(v1) if e]
            dsup = [(g, e) for g, e in enumerate(u1) if e]
            if laurent_free and (not dsup or (len(dsup) == 1 and dsup[0][1] == 1)):
                dg = dsup[0][0] if dsup else -1
                for (v2, u2), c2 in other.terms.items():
                    c = c1 * c2
                    if vsup:
                        lv = list(v2)
                        for g, e in vsup:
                            lv[g] += e
                        vsum = tuple(lv)
                    else:
                        vsum = v2
                    if dg >= 0:
                        lu = list(u2)
                        lu[dg] += 1
                        mono = (vsum, tuple(lu))
                    else:
                        mono = (vsum, u2)
                    cur = out.get(mono)
                    if cur is None:
                        if c.terms:
                            out[mono] = c
                    else:
                        s = cur + c
                        if s.is_zero():
                            del out[mono]
                        else:
                            out[mono] = s
                    if dg >= 0:
                        b = v2[dg]
                        if b:
                            lv = list(v2)
                            lv[dg] -= 1
                            for g, e in vsup:
                                lv[g] += e
                            mono = (tuple(lv), u2)
                            cc = c * _int_coeff(b)
                            cur = out.get(mono)
                            if cur is None:
                                if cc.terms:
                                    out[mono] = cc
                            else:
                                s = cur + cc
                                if s.is_zero():
                                    del out[mono]
                                else:
                                    out[mono] = s
                continue
            for (v2, u2), c2 in other.terms.items():
                c = c1 * c2
                for (kv, factor) in _reorder(gens, u1, v2):
                    mono = (
                        tuple(a + b - k for a, b, k in zip(v1, v2, kv)),
                        tuple(a + b - k for a, b, k in zip(u1, u2, kv)),
                    )
                    cc = c if factor == 1 else c * Coefficient.from_rational(factor)
                    cur = out.get(mono)
                    if cur is None:
                        if not cc.is_zero():
                            out[mono] = cc
                    else:
                        s = cur + cc
                        if s.is_zero():
                            del out[mono]
                        else:
                            out[mono] = s
        return WeylElement(gens, out)

    def __pow__(self, n):
        result = WeylElement.one(self.gens)
        for _ in range(n):
            result = result * self
        return result

    # --- polynomial-specific operations ------------------------------

    def is_polynomial(self):
        zero = self.gens._zero_exp
        return all(u == zero for _, u in self.terms)

    def apply(self, p):
        """Act as a differential operator on the polynomial p."""
        self._require_same(p)
        if not p.is_polynomial():
            raise ValueError("apply target must be a polynomial")
        gens = self.gens
        zero = gens._zero_exp
        out = {}
        for (vop, uop), cop in self.terms.items():
            for (vp, _), cp in p.terms.items():
                factor = 1
                for a, b, lau in zip(uop, vp, (g in gens.laurent for g in gens.names)):
                    if a == 0:
                        continue
                    if b >= 0 and a > b and not lau:
                        factor = 0
                        break
                    factor *= _falling(b, a)
                if factor == 0:
                    continue
                mono = (tuple(a + b - k for a, b, k in zip(vop, vp, uop)), zero)
                cc = cop * cp
                if factor != 1:
                    cc = cc * Coefficient.from_rational(factor)
                cur = out.get(mono)
                if cur is None:
                    if not cc.is_zero():
                        out[mono] = cc
                else:
                    s = cur + cc
                    if s.is_zero():
                        del out[mono]
                    else:
                        out[mono] = s
        return WeylElement(gens, out)

    # --- rendering ----------------------------------------------------

    def render(self):
        if not self.terms:
            return "0"
        gens = self.gens
        parts = []
        for (v, u) in sorted(
            self.terms, key=lambda m: (sum(m[0]) + sum(m[1]), m[0], m[1]), reverse=True
        ):
            c = self.terms[(v, u)]
            factors = []
            for name, e in zip(gens.names, v):
                if e:
                    factors.append(name if e == 1 else f"{name}^{e}")
            for name, e in zip(gens.names, u):
                if e:
                    factors.append(f"d{name}" if e == 1 else f"d{name}^{e}")
            mtxt = "*".join(factors)
            ctxt = c.render()
            if not mtxt:
                parts.append(ctxt)
            elif ctxt == "1":
                parts.append(mtxt)
            elif ctxt == "-1":
                parts.append("-" + mtxt)
            elif ("+" in ctxt[1:]) or ("-" in ctxt[1:]) or " " in ctxt:
                parts.append(f"({ctxt})*{mtxt}")
            else:
                parts.append(f"{ctxt}*{mtxt}")
        text = parts[0]
        for part in parts[1:]:
            if part.startswith("-"):
                text += " - " + part[1:]
            else:
                text += " + " + part
        return text

    def __repr__(self):
        return f"<WeylElement {self.render()}>"


def _reorder(gens, u, v):
    """Expand d^u * x^v into normal order.

    Yields (k_vector, integer factor) pairs such that
    d^u x^v = sum_k factor * x^(v-k) d^(u-k), per-generator Leibniz:
    d^a x^b = sum_k k! C(a,k) C(b,k) x^(b-k) d^(a-k).
    """
    hot = [
        g
        for g in range(gens.n)
        if u[g] and (v[g] > 0 or gens.names[g] in gens.laurent)
    ]
    if not hot:
        yield (gens._zero_exp, 1)
        return
    choices = []
    for g in hot:
        a, b = u[g], v[g]
        kmax = a if gens.names[g] in gens.laurent and b < 0 else min(a, b)
        opts = []
        for k in range(kmax + 1):
            if b >= 0:
                f = comb(a, k) * comb(b, k)
                for j in range(2, k + 1):
                    f *= j
            else:
                f = comb(a, k) * _falling(b, k)
            opts.append((k, f))
        choices.append((g, opts))

    def rec(idx, kacc, facc):
        if idx == len(choices):
            yield (tuple(kacc), facc)
            return
        g, opts = choices[idx]
        for k, f in opts:
            kacc[g] = k
            yield from rec(idx + 1, kacc, facc * f)
        kacc[g] = 0

    yield from rec(0, list(gens._zero_exp), 1)


def _const_values(terms):
    """If every coefficient is a parameter-free constant, return the
    {monomial: GaussianRational} view of terms; otherwise None."""
    out = {}
    for mono, c in terms.items():
        t = c.terms
        if len(t) != 1:
            return None
        g = t.get(())
        if g is None:
            return None
        out[mono] = g
    return out


def _mul_const(gens, left, right):
    """Product kernel for parameter-free coefficients, working directly
    on GaussianRational values; mirrors __mul__ exactly."""
    out = {}
    ritems = list(right.items())
    for (v1, u1), g1 in left.items():
        vsup = [(g, e) for g, e in enumerate(v1) if e]
        dsup = [(g, e) for g, e in enumerate(u1) if e]
        if not dsup or (len(dsup) == 1 and dsup[0][1] == 1):
            dg = dsup[0][0] if dsup else -1
            for (v2, u2), g2 in ritems:
                gg = g1 * g2
                if vsup:
                    lv = list(v2)
                    for g, e in vsup:
                        lv[g] += e
                    vsum = tuple(lv)
                else:
                    vsum = v2
                if dg >= 0:
                    lu = list(u2)
                    lu[dg] += 1
                    mono = (vsum, tuple(lu))
                else:
                    mono = (vsum, u2)
                cur = out.get(mono)
                if cur is None:
                    out[mono] = gg
                else:
                    s = cur + gg
                    if s.re or s.im:
                        out[mono] = s
                    else:
                        del out[mono]
                if dg >= 0:
                    b = v2[dg]
                    if b:
                        lv = list(v2)
                        lv[dg] -= 1
                        for g, e in vsup:
                            lv[g] += e
                        mono = (tuple(lv), u2)
                        gb = GaussianRational._make(gg.re * b, gg.im * b)
                        cur = out.get(mono)
                        if cur is None:
                            out[mono] = gb
                        else:
                            s = cur + gb
                            if s.re or s.im:
                                out[mono] = s
                            else:
                                del out[mono]
            continue
        for (v2, u2), g2 in ritems:
            gg = g1 * g2
            for (kv, factor) in _reorder(gens, u1, v2):
                mono = (
                    tuple(a + b - k for a, b, k in zip(v1, v2, kv)),
                    tuple(a + b - k for a, b, k in zip(u1, u2, kv)),
                )
                gf = gg if factor == 1 else GaussianRational._make(
                    gg.re * factor, gg.im * factor)
                cur = out.get(mono)
                if cur is None:
                    out[mono] = gf
                else:
                    s = cur + gf
                    if s.re or s.im:
                        out[mono] = s
                    else:
                        del out[mono]
    return {m: Coefficient({(): g}) for m, g in out.items()}


def complex_pair(gens, base):
    """Return (z, dz) for the complex pair built on x<base>, y<base>:
    z = x + i*y, dz = (dx - i*dy)/2."""
    x = WeylElement.variable(gens, f"x{base}")
    y = WeylElement.variable(gens, f"y{base}")
    dx = WeylElement.derivative(gens, f"x{base}")
    dy = WeylElement.derivative(gens, f"y{base}")
    z = x + y.scale(C_I)
    dz = (dx - dy.scale(C_I)).scale(C_HALF)
    return z, dz


def wick(p, momentum_map, target):
    """Wick (normal-ordering) map.

    p is a commutative polynomial over a doubled generator set in which
    some generators are "momentum" symbols; momentum_map sends each
    momentum name to the target variable it differentiates.  Each
    monomial prod z^k * prod p^m maps to prod z^k * prod d^m with all
    variables to the left.
    """
    if not p.is_polynomial():
        raise ValueError("wick input must be a commutative polynomial")
    out = WeylElement.zero(target)
    for (v, _), c in p.terms.items():
        var = [0] * target.n
        der = [0] * target.n
        for name, e in zip(p.gens.names, v):
            if not e:
                continue
            if name in momentum_map:
                der[target.index[momentum_map[name]]] += e
            else:
                var[target.index[name]] += e
        out = out + WeylElement(target, {(tuple(var), tuple(der)): c})
    return out


def _lead(p):
    return max(p.terms, key=lambda m: (sum(m[0]), m[0]))


def exact_divide(p, q):
    """Exact polynomial division p / q; raises NotDivisible otherwise.

    Coefficient division requires the relevant leading coefficients of q
    to be Gaussian-rational constants (true for every divisor the suite
    uses: determinant powers and Vandermonde factors).
    """
    if not (p.is_polynomial() and q.is_polynomial()):
        raise ValueError("exact_divide works on polynomials")
    if q.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    gens = p.gens
    lq = _lead(q)
    cq = q.terms[lq].constant_value()
    quotient = WeylElement.zero(gens)
    rem = p
    while not rem.is_zero():
        lr = _lead(rem)
        diff = tuple(a - b for a, b in zip(lr[0], lq[0]))
        if any(d < 0 for d in diff):
            raise NotDivisible(f"leading term {lr} not divisible by {lq}")
        c = rem.terms[lr] * Coefficient.from_gaussian(cq.inverse())
        t = WeylElement(gens, {(diff, gens._zero_exp): c})
        quotient = quotient + t
        rem = rem - t * q
    return quotient


def weyl_ring(gens):
    return Ring(
        f"weyl({','.join(gens.names)})",
        WeylElement.zero(gens),
        WeylElement.one(gens),
        from_coefficient=lambda c: WeylElement.from_coefficient(gens, c),
        has_bar=True,
    )

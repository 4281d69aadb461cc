"""Cayley operator identities: sweep integer exponents s, divide the
result of det(d) applied to det(z)^s by det(z)^(s-1), and reconstruct
the Bernstein-Sato polynomial b(s) by exact Lagrange interpolation.

Run:  python demos/cayley_sweep.py
"""

from nc_capelli import cayley


def main():
    for n in (1, 2, 3):
        values = [(s, cayley.cayley_scalar(n, s)) for s in range(1, n + 2)]
        poly = cayley.interpolate(values)
        print(f"n={n}: sweep {[(s, v.render()) for s, v in values]}")
        print(f"      interpolated b(s) = {poly.render()}")
        print(f"      closed form       = {cayley.b_polynomial(n).render()}")

    print()
    print("Decomplexified operator gives b(s)^2:")
    for s in (1, 2, 3):
        b = cayley.cayley_scalar(2, s)
        sq = cayley.cayley_decomplexified(2, s)
        print(f"  n=2, s={s}: b={b.render()}, decomplexified={sq.render()}, "
              f"square matches = {sq == b * b}")

    print()
    print("Quaternionic forms at n=1:")
    for s in (1, 2):
        cf = cayley.cayley_quaternion("complexForm", 1, s)
        rf = cayley.cayley_quaternion("realForm", 1, s)
        print(f"  s={s}: complex form = {cf.render()}, "
              f"real form = {rf.render()}")

    print()
    print("Radial-part reduction (Vandermonde-conjugated):")
    for n in (1, 2, 3):
        report = cayley.radial_identity(n, 2)
        print(f"  n={n}, s=2: residual zero = {report.residualIsZero}")
    print(f"  gl_2 trace example evaluates to "
          f"{cayley.radial_gl2_example().render()}")


if __name__ == "__main__":
    main()

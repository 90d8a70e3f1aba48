#!/usr/bin/env python3
"""Generate the bundled permutation generator files under data/.

PSU3(8) is realised on the 513 isotropic points of the Hermitian form
f(u, v) = u1*v3^8 + u2*v2^8 + u3*v1^8 over GF(64).  The witness subgroup
3 x PSL2(8) is the stabiliser of the non-isotropic point <e2>; the extender
is the involution swapping two vectors of an orthonormal basis adapted to e2.

Usage: make_perm_data.py OUTDIR [--check]   (--check needs sympy)
"""
import itertools
import sys

MOD = 0b1000011  # x^6 + x + 1, primitive over GF(2)


def gf_mul(a, b):
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & 0b1000000:
            a ^= MOD
    return r


EXP = [1]
for _ in range(62):
    EXP.append(gf_mul(EXP[-1], 2))
LOG = {v: i for i, v in enumerate(EXP)}


def gf_pow(a, e):
    if a == 0:
        return 0
    return EXP[(LOG[a] * e) % 63]


def gf_inv(a):
    return EXP[(-LOG[a]) % 63]


def frob(a):
    return gf_pow(a, 8)


def herm(u, v):
    return gf_mul(u[0], frob(v[2])) ^ gf_mul(u[1], frob(v[1])) ^ gf_mul(u[2], frob(v[0]))


def normalize(v):
    for c in v:
        if c:
            inv = gf_inv(c)
            return tuple(gf_mul(x, inv) for x in v)
    raise ValueError("zero vector")


def vecmat(v, m):
    return tuple(
        gf_mul(v[0], m[0][j]) ^ gf_mul(v[1], m[1][j]) ^ gf_mul(v[2], m[2][j]) for j in range(3)
    )


def matmul(a, b):
    return [list(vecmat(a[i], b)) for i in range(3)]


def det3(m):
    t = 0
    for p in itertools.permutations(range(3)):
        t ^= gf_mul(gf_mul(m[0][p[0]], m[1][p[1]]), m[2][p[2]])
    return t


def preserves(m):
    basis = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    return all(herm(vecmat(u, m), vecmat(v, m)) == herm(u, v) for u in basis for v in basis)


points = []
for v in itertools.product(range(64), repeat=3):
    if any(v) and normalize(v) == v and herm(v, v) == 0:
        points.append(v)
assert len(points) == 513, len(points)
index = {p: i for i, p in enumerate(points)}


def perm_of(m):
    assert preserves(m) and det3(m) == 1
    return [index[normalize(vecmat(p, m))] for p in points]


def cycles(perm):
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if seen[i] or perm[i] == i:
            continue
        c = []
        j = i
        while not seen[j]:
            seen[j] = True
            c.append(j + 1)
            j = perm[j]
        out.append("(" + ",".join(map(str, c)) + ")")
    return "".join(out) if out else "()"


def write(path, degree, gens, comment):
    with open(path, "w") as fh:
        fh.write("# %s\n" % comment)
        fh.write("DEGREE %d\n" % degree)
        for g in gens:
            fh.write("GEN %s\n" % cycles(g))


def main():
    out = sys.argv[1]
    omega = 2  # primitive element of GF(64)
    theta = gf_pow(omega, 9)  # generator of GF(8)*
    mu = gf_pow(omega, 7)  # primitive 9th root of unity

    weyl = [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
    alpha = 1
    beta = next(b for b in range(64) if b ^ frob(b) ^ gf_pow(alpha, 9) == 0 and b)
    unip = [[1, alpha, beta], [0, 1, frob(alpha)], [0, 0, 1]]
    diag = [[omega, 0, 0], [0, gf_pow(omega, 7), 0], [0, 0, gf_pow(omega, -8 % 63)]]
    g1 = perm_of(weyl)
    g2 = perm_of(matmul(unip, diag))

    # 3 x PSL2(8): SL2(8) on <e1, e3>, plus diag(mu, mu^-2, mu)
    s1 = perm_of([[1, 0, theta], [0, 1, 0], [0, 0, 1]])
    s2 = perm_of([[0, 0, 1], [0, 1, 0], [1, 0, 0]])
    s3 = perm_of([[theta, 0, 0], [0, 1, 0], [0, 0, gf_inv(theta)]])
    z = perm_of([[mu, 0, 0], [0, gf_pow(mu, 7), 0], [0, 0, mu]])

    # orthonormal basis v1, e2, v3 with v1, v3 spanning <e1, e3>
    plane = [(x, 0, y) for x in range(64) for y in range(64) if x or y]
    v1 = next(v for v in plane if herm(v, v) == 1)
    v3 = next(v for v in plane if herm(v, v) == 1 and herm(v1, v) == 0)
    basis = [list(v1), [0, 1, 0], list(v3)]
    # M with v1 M = e2, e2 M = v1, v3 M = v3
    e = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    # coordinates of e_i in the basis (v1, e2, v3)
    coords = []
    for ei in e:
        for c in itertools.product(range(64), repeat=3):
            w = tuple(gf_mul(c[0], basis[0][j]) ^ gf_mul(c[1], basis[1][j]) ^ gf_mul(c[2], basis[2][j]) for j in range(3))
            if w == ei:
                coords.append(c)
                break
    images = [basis[1], basis[0], basis[2]]
    ext = []
    for c in coords:
        ext.append([gf_mul(c[0], images[0][j]) ^ gf_mul(c[1], images[1][j]) ^ gf_mul(c[2], images[2][j]) for j in range(3)])
    t = perm_of(ext)

    write(out + "/psu38.gens", 513, [g1, g2],
          "PSU3(8) on the 513 isotropic points of a Hermitian form over GF(64)")
    write(out + "/psu38_sub.gens", 513, [s1, s2, s3, z],
          "3 x PSL2(8) inside psu38.gens: stabiliser of a non-isotropic point")
    write(out + "/psu38_ext.gens", 513, [t],
          "involution normalising a 9x3 torus of psu38_sub.gens, not in psu38_sub.gens")

    if "--check" in sys.argv:
        from sympy.combinatorics import Permutation, PermutationGroup
        G = PermutationGroup([Permutation(g1), Permutation(g2)])
        H = PermutationGroup([Permutation(p) for p in (s1, s2, s3, z)])
        print("G", G.order(), "H", H.order())
        print("t in G", G.contains(Permutation(t)), "t in H", H.contains(Permutation(t)))
        print("<H,t>", PermutationGroup(list(H.generators) + [Permutation(t)]).order())


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Write the small bundled tables (S3, C3, C9, D18, C9xC3) and permutation
generator files for S3, A5, D18, C9xC3 and PSL2(8) into OUTDIR."""
import sys

out = sys.argv[1]


def e(n, k):
    k %= n
    return "1" if k == 0 else ("E(%d)" % n if k == 1 else "E(%d)^%d" % (n, k))


def write(name, text):
    with open("%s/%s" % (out, name), "w") as fh:
        fh.write(text.strip() + "\n")


write("s3.ct", """
GROUP S3
ORDER 6
CLASSES 3
CLASS 1A ORDER=1 CENT=6
CLASS 2A ORDER=2 CENT=2
CLASS 3A ORDER=3 CENT=3
POWERMAP 2 : 1A->1A, 2A->1A, 3A->3A
POWERMAP 3 : 1A->1A, 2A->2A, 3A->1A
IRR 1 : 1 1 1
IRR 1- : 1 -1 1
IRR 2 : 2 0 -1
""")

write("c3.ct", """
GROUP C3
ORDER 3
CLASSES 3
CLASS 1A ORDER=1 CENT=3
CLASS 3A ORDER=3 CENT=3
CLASS 3B ORDER=3 CENT=3
POWERMAP 3 : 1A->1A, 3A->1A, 3B->1A
IRR 1 : 1 1 1
IRR 1a : 1 E(3) E(3)^2
IRR 1b : 1 E(3)^2 E(3)
""")

write("c3_s3.fus", """
FUSION C3 -> S3
1A -> 1A
3A -> 3A
3B -> 3A
""")


def abelian(name, moduli):
    # elements as tuples, listed lexicographically; labels by order of appearance
    from itertools import product
    from math import gcd
    elts = list(product(*[range(m) for m in moduli]))

    def order(x):
        o = 1
        for a, m in zip(x, moduli):
            oa = m // gcd(a, m)
            o = o * oa // gcd(o, oa)
        return o
    n = 1
    for m in moduli:
        n *= m
    seen = {}
    labels = {}
    for x in elts:
        o = order(x)
        seen[o] = seen.get(o, 0) + 1
        labels[x] = "%d%s" % (o, chr(ord("A") + seen[o] - 1))
    lines = ["GROUP %s" % name, "ORDER %d" % n, "CLASSES %d" % n]
    for x in elts:
        lines.append("CLASS %s ORDER=%d CENT=%d" % (labels[x], order(x), n))
    primes = sorted({p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))})
    for p in primes:
        pairs = ", ".join("%s->%s" % (labels[x], labels[tuple((a * p) % m for a, m in zip(x, moduli))]) for x in elts)
        lines.append("POWERMAP %d : %s" % (p, pairs))
    lcm = max(moduli)
    for s in elts:
        vals = []
        for x in elts:
            k = sum(si * xi * (lcm // m) for si, xi, m in zip(s, x, moduli))
            vals.append(e(lcm, k))
        nm = "1" if not any(s) else "L" + "_".join(map(str, s))
        lines.append("IRR %s : %s" % (nm, " ".join(vals)))
    return "\n".join(lines)


write("c9.ct", abelian("C9", [9]))
write("c9xc3.ct", abelian("C9xC3", [9, 3]))

d18 = ["GROUP D18", "ORDER 18", "CLASSES 6",
       "CLASS 1A ORDER=1 CENT=18", "CLASS 2A ORDER=2 CENT=2", "CLASS 3A ORDER=3 CENT=9",
       "CLASS 9A ORDER=9 CENT=9", "CLASS 9B ORDER=9 CENT=9", "CLASS 9C ORDER=9 CENT=9",
       "POWERMAP 2 : 1A->1A, 2A->1A, 3A->3A, 9A->9B, 9B->9C, 9C->9A",
       "POWERMAP 3 : 1A->1A, 2A->2A, 3A->1A, 9A->3A, 9B->3A, 9C->3A",
       "IRR 1 : 1 1 1 1 1 1", "IRR 1- : 1 -1 1 1 1 1"]
for j in range(1, 5):
    vals = ["2", "0"] + ["%s+%s" % (e(9, r * j), e(9, -r * j)) for r in (3, 1, 2, 4)]
    vals = [v.replace("1+1", "2") for v in vals]
    d18.append("IRR 2_%d : %s" % (j, " ".join(vals)))
write("d18.ct", "\n".join(d18))

write("s3.gens", "# S3 on 3 points\nDEGREE 3\nGEN (1,2)\nGEN (1,2,3)")
write("a5.gens", "# A5 on 5 points\nDEGREE 5\nGEN (1,2,3,4,5)\nGEN (1,2,3)")
write("d18.gens", "# D18 on the 9 vertices of a nonagon\nDEGREE 9\nGEN (1,2,3,4,5,6,7,8,9)\nGEN (2,9)(3,8)(4,7)(5,6)")
write("c9xc3.gens", "# C9 x C3 on 9 + 3 points\nDEGREE 12\nGEN (1,2,3,4,5,6,7,8,9)\nGEN (10,11,12)")

# PSL2(8) on the projective line over GF(8) = GF(2)[x]/(x^3+x+1)
def m8(a, b):
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & 8:
            a ^= 0b1011
    return r
inv8 = {a: next(b for b in range(1, 8) if m8(a, b) == 1) for a in range(1, 8)}
INF = 8
def pt(x):
    return x + 1
def mobius(f):
    return [f(x) for x in range(9)]
def cyc(perm):
    seen = set(); s = ""
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        c = []; j = i
        while j not in seen:
            seen.add(j); c.append(str(pt(j))); j = perm[j]
        s += "(" + ",".join(c) + ")"
    return s
shift = mobius(lambda x: INF if x == INF else x ^ 1)
scale = mobius(lambda x: INF if x == INF else m8(x, 2))
flip = mobius(lambda x: 0 if x == INF else (INF if x == 0 else inv8[x]))
write("psl28.gens", "# PSL2(8) on the projective line over GF(8); point 9 is infinity\nDEGREE 9\nGEN %s\nGEN %s\nGEN %s" % (cyc(shift), cyc(scale), cyc(flip)))

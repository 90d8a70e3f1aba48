#!/usr/bin/env python3
"""Convert ordinary character tables from the GAP character table library
(ctbllib ``data/*.tbl`` files) into the ``.ct`` text format used by ``cgt``.

Usage: ctbllib_to_ct.py TBLFILE GAPNAME OUTNAME [--partial ROWS COLS]

ROWS is a comma-separated list of character degrees (first matching row in
table order), COLS a comma-separated list of class labels.  Extra reducible
rows can be requested as NAME=DEG+DEG+... inside ROWS.
"""
import re
import sys
from math import gcd


def read_mot(path, name):
    text = open(path).read()
    start = text.index('MOT("%s",' % name)
    end = text.index("]);", start)
    return text[start + len('MOT("%s",' % name):end + 1]


def parse_list(s, i):
    assert s[i] == "["
    i += 1
    items = []
    cur = None
    while True:
        c = s[i]
        if c == "[":
            cur, i = parse_list(s, i)
            continue
        if c == "," or c == "]":
            items.append(cur.strip() if isinstance(cur, str) else cur)
            cur = None
            i += 1
            if c == "]":
                if items == [None]:
                    items = []
                return items, i
            continue
        if c == '"':
            j = s.index('"', i + 1)
            while s[j - 1] == "\\":
                j = s.index('"', j + 1)
            cur = s[i:j + 1]
            i = j + 1
            continue
        cur = (cur or "") + c
        i += 1


def parse_mot(body):
    s = "[" + body.strip().rstrip(";").rstrip(")")
    # body is: [comments], [centralizers], [powermaps], [irreducibles], [autos]
    items, _ = parse_list(s + "]", 0)
    return items


def galois(expr, k):
    def sub(m):
        n = int(m.group(1))
        e = int(m.group(2)) if m.group(2) else 1
        return "E(%d)^%d" % (n, (e * k) % n)
    return re.sub(r"E\((\d+)\)(?:\^(\d+))?", sub, expr)


def clean(v):
    return re.sub(r"\s+", "", v)


def main():
    path, gapname, outname = sys.argv[1:4]
    partial = None
    if len(sys.argv) > 4 and sys.argv[4] == "--partial":
        partial = (sys.argv[5].split(","), sys.argv[6].split(","))
    items = parse_mot(read_mot(path, gapname))
    cents = [int(x) for x in items[1]]
    pows = items[2]
    k = len(cents)
    powermaps = {}
    for p, m in enumerate(pows, start=1):
        if m:
            powermaps[p] = [int(x) - 1 for x in m]
    irr = []
    for row in items[3]:
        if row[0] == "GALOIS":
            src, e = int(row[1][0]), int(row[1][1])
            irr.append([galois(v, e) for v in irr[src - 1]])
        else:
            irr.append([clean(v) for v in row])

    def power_class(i, m):
        for p in sorted(powermaps):
            while m % p == 0:
                i = powermaps[p][i]
                m //= p
        assert m == 1 or all(m % p for p in powermaps)
        return i

    orders = []
    for i in range(k):
        m = 1
        while power_class(i, m) != 0:
            m += 1
        orders.append(m)
    labels = []
    seen = {}
    for o in orders:
        seen[o] = seen.get(o, 0) + 1
        labels.append("%d%s" % (o, chr(ord("A") + seen[o] - 1)))

    keep_cols = list(range(k))
    rows = [("X%d" % (i + 1), r) for i, r in enumerate(irr)]
    rows = [(r[0] if r[0].lstrip("-").isdigit() else n, r) for n, r in rows]
    if partial:
        wanted_rows, wanted_cols = partial
        keep_cols = [labels.index(c) for c in wanted_cols]
        chosen = []
        for w in wanted_rows:
            if "=" in w:
                name, parts = w.split("=")
                comps = [next(r for n, r in rows if n == d) for d in parts.split("+")]
                # only integer-valued columns can be summed here
                summed = [str(sum(int(c[j]) for c in comps)) if all(c[j].lstrip("-").isdigit() for c in comps) else None
                          for j in range(k)]
                chosen.append((name, summed))
            else:
                chosen.append((w, next(r for n, r in rows if n == w)))
        rows = chosen

    # disambiguate repeated degree names: 27000a, 27000b, ...
    counts = {}
    for n, _ in rows:
        counts[n] = counts.get(n, 0) + 1
    used = {}
    named = []
    for n, r in rows:
        if counts[n] > 1:
            used[n] = used.get(n, 0) + 1
            n = "%s%s" % (n, chr(ord("a") + used[n] - 1))
        named.append((n, r))

    order = cents[0]
    out = ["# Source: GAP character table library (ctbllib), table \"%s\"." % gapname]
    out.append("GROUP %s" % outname)
    out.append("ORDER %d" % order)
    if partial:
        out.append("PARTIAL")
    out.append("CLASSES %d" % len(keep_cols))
    for i in keep_cols:
        out.append("CLASS %s ORDER=%d CENT=%d" % (labels[i], orders[i], cents[i]))
    if not partial:
        for p in sorted(powermaps):
            if order % p == 0:
                pairs = ", ".join("%s->%s" % (labels[i], labels[powermaps[p][i]]) for i in range(k))
                out.append("POWERMAP %d : %s" % (p, pairs))
    for n, r in named:
        vals = []
        for i in keep_cols:
            if r[i] is None:
                sys.exit("cannot sum irrational column %s" % labels[i])
            vals.append(r[i])
        out.append("IRR %s : %s" % (n, " ".join(vals)))
    print("\n".join(out))


if __name__ == "__main__":
    main()

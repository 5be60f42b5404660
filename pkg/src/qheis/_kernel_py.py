"""Pure-Python product kernel; ``_kernel.pyx`` is a typed copy of this file.

Terms are dicts keyed ``(a, b, m_1, ..., m_n)`` where ``h^a w^b`` is the
scalar power and ``m_s`` is the PBW exponent 4-tuple in slot ``s``. The
structure-constant callback ``table(m1, m2)`` returns a sequence of
``(m, da, db, c)`` with ``m1 * m2 = sum c h^da w^db m``.
"""


def mul_terms(x, y, arity, kh, kw, table):
    out = {}
    get = out.get
    ylist = list(y.items())
    for kx, cx in x.items():
        ax = kx[0]
        bx = kx[1]
        for ky, cy in ylist:
            a0 = ax + ky[0]
            if a0 >= kh:
                continue
            b0 = bx + ky[1]
            if b0 >= kw:
                continue
            c0 = cx * cy
            if arity == 1:
                for m, da, db, c in table(kx[2], ky[2]):
                    a = a0 + da
                    b = b0 + db
                    if a < kh and b < kw:
                        key = (a, b, m)
                        out[key] = get(key, 0) + c0 * c
            elif arity == 2:
                t2 = table(kx[3], ky[3])
                for m1, da1, db1, c1 in table(kx[2], ky[2]):
                    a1 = a0 + da1
                    b1 = b0 + db1
                    if a1 >= kh or b1 >= kw:
                        continue
                    c01 = c0 * c1
                    for m2, da2, db2, c2 in t2:
                        a = a1 + da2
                        b = b1 + db2
                        if a < kh and b < kw:
                            key = (a, b, m1, m2)
                            out[key] = get(key, 0) + c01 * c2
            else:
                _mul_general(out, kx, ky, a0, b0, c0, arity, kh, kw, table)
    return {k: v for k, v in out.items() if v}


def _mul_general(out, kx, ky, a0, b0, c0, arity, kh, kw, table):
    partial = [((), a0, b0, c0)]
    for s in range(2, 2 + arity):
        nxt = []
        for ms, a, b, c in partial:
            for m, da, db, cc in table(kx[s], ky[s]):
                a1 = a + da
                b1 = b + db
                if a1 < kh and b1 < kw:
                    nxt.append((ms + (m,), a1, b1, c * cc))
        partial = nxt
        if not partial:
            return
    for ms, a, b, c in partial:
        key = (a, b) + ms
        out[key] = out.get(key, 0) + c

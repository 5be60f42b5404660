# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled product kernel; mirrors ``_kernel_py.py`` with typed loop indices."""


def mul_terms(dict x, dict y, int arity, int kh, int kw, table):
    cdef dict out = {}
    cdef list ylist = list(y.items())
    cdef int ax, bx, a0, b0, a1, b1, a, b, da, db
    cdef tuple kx, ky, key
    for kx, cx in x.items():
        ax = kx[0]
        bx = kx[1]
        for ky, cy in ylist:
            a0 = ax + <int>ky[0]
            if a0 >= kh:
                continue
            b0 = bx + <int>ky[1]
            if b0 >= kw:
                continue
            c0 = cx * cy
            if arity == 1:
                for m, da, db, c in table(kx[2], ky[2]):
                    a = a0 + da
                    b = b0 + db
                    if a < kh and b < kw:
                        key = (a, b, m)
                        prev = out.get(key)
                        out[key] = c0 * c if prev is None else prev + c0 * c
            elif arity == 2:
                t2 = table(kx[3], ky[3])
                for m1, da, db, c1 in table(kx[2], ky[2]):
                    a1 = a0 + da
                    b1 = b0 + db
                    if a1 >= kh or b1 >= kw:
                        continue
                    c01 = c0 * c1
                    for m2, da, db, c2 in t2:
                        a = a1 + da
                        b = b1 + db
                        if a < kh and b < kw:
                            key = (a, b, m1, m2)
                            prev = out.get(key)
                            out[key] = c01 * c2 if prev is None else prev + c01 * c2
            else:
                _mul_general(out, kx, ky, a0, b0, c0, arity, kh, kw, table)
    return {k: v for k, v in out.items() if v}


cdef _mul_general(dict out, tuple kx, tuple ky, int a0, int b0, c0, int arity,
                  int kh, int kw, table):
    cdef list partial = [((), a0, b0, c0)]
    cdef list nxt
    cdef int s, a, b, a1, b1, da, db
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

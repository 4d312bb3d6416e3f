# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled basic-graph-pattern join over integer-encoded triples.

Same contract as semflow.rdf._bgp_py.join_patterns; iterative backtracking
with C arrays so the inner matching loop stays free of Python objects.
"""

def join_patterns(long[::1] s, long[::1] p, long[::1] o,
                  long[::1] pats, int npatterns, int nvars):
    cdef Py_ssize_t n = s.shape[0]
    cdef list out = []
    cdef long binding[64]
    cdef Py_ssize_t cursor[64]
    cdef int fresh[64][3]
    cdef int nfresh[64]
    cdef int d = 0
    cdef Py_ssize_t i
    cdef int j, v, nf, ok
    cdef long pv, tv

    if npatterns == 0:
        return out
    if nvars > 64 or npatterns > 64:
        raise ValueError("pattern/variable count exceeds compiled kernel limits")

    for j in range(nvars):
        binding[j] = -1
    cursor[0] = 0
    nfresh[0] = 0

    while d >= 0:
        if d == npatterns:
            out.append(tuple([binding[j] for j in range(nvars)]))
            d -= 1
            for j in range(nfresh[d]):
                binding[fresh[d][j]] = -1
            cursor[d] += 1
            continue

        i = cursor[d]
        ok = 0
        while i < n:
            ok = 1
            nf = 0
            for j in range(3):
                pv = pats[3 * d + j]
                if j == 0:
                    tv = s[i]
                elif j == 1:
                    tv = p[i]
                else:
                    tv = o[i]
                if pv >= 0:
                    if pv != tv:
                        ok = 0
                        break
                else:
                    v = <int>(-pv - 1)
                    if binding[v] == -1:
                        binding[v] = tv
                        fresh[d][nf] = v
                        nf += 1
                    elif binding[v] != tv:
                        ok = 0
                        break
            if ok:
                nfresh[d] = nf
                break
            # undo partial bindings from the failed attempt
            for j in range(nf):
                binding[fresh[d][j]] = -1
            i += 1
        cursor[d] = i

        if ok:
            d += 1
            if d < npatterns:
                cursor[d] = 0
                nfresh[d] = 0
        else:
            d -= 1
            if d >= 0:
                for j in range(nfresh[d]):
                    binding[fresh[d][j]] = -1
                cursor[d] += 1

    return out

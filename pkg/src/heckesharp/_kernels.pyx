# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Mirrors ``_kernels_py`` exactly."""

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

ctypedef unsigned long long u64


cpdef tuple add_exponents(tuple e1, tuple e2):
    cdef Py_ssize_t n1 = len(e1), n2 = len(e2), i
    if n1 < n2:
        e1, e2 = e2, e1
        n1, n2 = n2, n1
    cdef list out = list(e1)
    for i in range(n2):
        out[i] = <long>out[i] + <long>e2[i]
    while n1 > 0 and out[n1 - 1] == 0:
        out.pop()
        n1 -= 1
    return tuple(out)


def mul_terms(dict a, dict b, Py_ssize_t phi, tuple red):
    cdef dict out = {}
    cdef tuple ea, eb, va, vb, e, prev, r
    cdef Py_ssize_t i, j, k, width
    cdef list conv, acc
    cdef object x, c
    if phi == 1:
        for ea, va in a.items():
            x = va[0]
            for eb, vb in b.items():
                e = add_exponents(ea, eb)
                c = x * vb[0]
                prev = out.get(e)
                if prev is None:
                    out[e] = (c,)
                else:
                    out[e] = (prev[0] + c,)
        return {e: va for e, va in out.items() if va[0]}
    width = 2 * phi - 1
    for ea, va in a.items():
        for eb, vb in b.items():
            conv = [0] * width
            for i in range(phi):
                x = va[i]
                if x:
                    for j in range(phi):
                        conv[i + j] = conv[i + j] + x * vb[j]
            acc = conv[:phi]
            for k in range(phi, width):
                c = conv[k]
                if c:
                    r = red[k]
                    for i in range(phi):
                        acc[i] = acc[i] + c * r[i]
            e = add_exponents(ea, eb)
            prev = out.get(e)
            if prev is not None:
                for i in range(phi):
                    acc[i] = acc[i] + prev[i]
            out[e] = tuple(acc)
    return {e: va for e, va in out.items() if any(va)}


def add_terms(dict a, object fa, dict b, object fb):
    cdef dict out = {}
    cdef tuple e, v, prev
    cdef Py_ssize_t i, n
    cdef list acc
    for e, v in a.items():
        out[e] = tuple([fa * x for x in v])
    for e, v in b.items():
        prev = out.get(e)
        n = len(v)
        if prev is None:
            out[e] = tuple([fb * x for x in v])
        else:
            acc = [0] * n
            for i in range(n):
                acc[i] = prev[i] + fb * v[i]
            out[e] = tuple(acc)
    return {e: v for e, v in out.items() if any(v)}


def bernstein_chain(tuple x, Py_ssize_t j, Py_ssize_t n):
    cdef list out = []
    cdef list lst = list(x)
    cdef Py_ssize_t k
    for k in range(n):
        out.append(tuple(lst))
        lst[j] = lst[j] - 1
        lst[j + 1] = lst[j + 1] + 1
    return out


cdef inline u64 mulmod(u64 a, u64 b, u64 m) nogil:
    return <u64>((<u128>a * <u128>b) % <u128>m)


def green_scan(u64 q, u64 d, u64 m, bint galois_twist=True):
    cdef u64 modulus = 1, i, k, y, kq, target, qd, norm_exp
    cdef Py_ssize_t s, t, mm = m
    cdef bint ok, regular
    cdef u64 orbit[64]
    if m > 64:
        raise ValueError("m > 64 not supported by the compiled scan")
    for i in range(d * m):
        modulus = modulus * q
    modulus -= 1
    norm_exp = modulus // (q - 1)
    qd = 1 % modulus if modulus > 1 else 0
    for i in range(d):
        qd = mulmod(qd, q, modulus) if modulus > 1 else 0
    found = []
    for k in range(modulus):
        y = k
        for s in range(mm):
            orbit[s] = y
            y = mulmod(y, qd, modulus) if modulus > 1 else 0
        regular = True
        for s in range(mm):
            for t in range(s):
                if orbit[s] == orbit[t]:
                    regular = False
                    break
            if not regular:
                break
        if not regular:
            continue
        kq = mulmod(k, q, modulus) if modulus > 1 else 0
        target = (k + norm_exp) % modulus
        if galois_twist:
            ok = False
            y = target
            for s in range(mm):
                if y == kq:
                    ok = True
                    break
                y = mulmod(y, qd, modulus) if modulus > 1 else 0
        else:
            ok = target == kq
        if not ok:
            continue
        ok = True
        for s in range(mm):
            if orbit[s] == kq:
                ok = False
                break
        if ok:
            found.append(k)
    return found

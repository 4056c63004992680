"""Pure-Python kernels. Same signatures as the compiled ``_kernels`` module.

Sparse terms are dicts ``{exponent tuple: coefficient vector}``. Exponent
tuples carry no trailing zeros; coefficient vectors are tuples of ints of
length ``phi`` (coordinates in the cyclotomic power basis).
"""


def add_exponents(e1, e2):
    n1 = len(e1)
    n2 = len(e2)
    if n1 < n2:
        e1, e2, n1, n2 = e2, e1, n2, n1
    out = list(e1)
    for i in range(n2):
        out[i] += e2[i]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def mul_terms(a, b, phi, red):
    """Product of two sparse term dicts over Z[zeta].

    ``red[k]`` is zeta**k written in the power basis, for ``0 <= k < 2*phi-1``.
    """
    out = {}
    if phi == 1:
        for ea, va in a.items():
            x = va[0]
            for eb, vb in b.items():
                e = add_exponents(ea, eb)
                prev = out.get(e)
                c = x * vb[0]
                out[e] = (c,) if prev is None else (prev[0] + c,)
        return {e: v for e, v in out.items() if v[0]}
    width = 2 * phi - 1
    for ea, va in a.items():
        for eb, vb in b.items():
            conv = [0] * width
            for i in range(phi):
                x = va[i]
                if x:
                    for j in range(phi):
                        conv[i + j] += x * vb[j]
            acc = conv[:phi]
            for k in range(phi, width):
                c = conv[k]
                if c:
                    r = red[k]
                    for i in range(phi):
                        acc[i] += c * r[i]
            e = add_exponents(ea, eb)
            prev = out.get(e)
            if prev is not None:
                for i in range(phi):
                    acc[i] += prev[i]
            out[e] = tuple(acc)
    return {e: v for e, v in out.items() if any(v)}


def add_terms(a, fa, b, fb):
    """``fa*a + fb*b`` for integer multipliers ``fa``, ``fb``."""
    out = {}
    for e, v in a.items():
        out[e] = tuple(fa * x for x in v)
    for e, v in b.items():
        prev = out.get(e)
        if prev is None:
            out[e] = tuple(fb * x for x in v)
        else:
            out[e] = tuple(p + fb * x for p, x in zip(prev, v))
    return {e: v for e, v in out.items() if any(v)}


def bernstein_chain(x, j, n):
    """Lattice points x - k*(e_j - e_{j+1}) for 0 <= k < n."""
    out = []
    lst = list(x)
    for _ in range(n):
        out.append(tuple(lst))
        lst[j] -= 1
        lst[j + 1] += 1
    return out


def green_scan(q, d, m, galois_twist=True):
    """Residues k mod q**(d*m) - 1 passing the regular/twist/non-fixed test.

    With ``galois_twist`` the twist condition is read up to the Frobenius
    orbit; otherwise only the literal congruence kq = k + N is accepted.
    """
    modulus = q ** (d * m) - 1
    norm_exp = modulus // (q - 1)
    qd = pow(q, d, modulus) if modulus > 1 else 0
    found = []
    for k in range(modulus):
        orbit = []
        y = k
        for _ in range(m):
            orbit.append(y)
            y = (y * qd) % modulus
        if len(set(orbit)) != m:
            continue
        kq = (k * q) % modulus
        target = (k + norm_exp) % modulus
        if galois_twist:
            ok = False
            y = target
            for _ in range(m):
                if y == kq:
                    ok = True
                    break
                y = (y * qd) % modulus
        else:
            ok = target == kq
        if not ok:
            continue
        if kq in orbit:
            continue
        found.append(k)
    return found

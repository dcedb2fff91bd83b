"""Pure-Python versions of the hot loops.  Same API as the compiled module."""


def compose_rows(r_rows, s_rows):
    out = []
    for r in r_rows:
        acc = 0
        y = 0
        while r:
            if r & 1:
                acc |= s_rows[y]
            r >>= 1
            y += 1
        out.append(acc)
    return tuple(out)


def compose_terms(u, v):
    # (sum a_f f) o (sum b_g g) = sum a_f b_g (f o g)
    out = {}
    for f, a in u.items():
        for g, b in v.items():
            h = tuple([f[i] for i in g])
            c = out.get(h, 0) + a * b
            if c:
                out[h] = c
            else:
                out.pop(h, None)
    return out


def join_action(rows, phi, join, bottom):
    out = []
    for r in rows:
        acc = bottom
        x = 0
        while r:
            if r & 1:
                acc = join[acc][phi[x]]
            r >>= 1
            x += 1
        out.append(acc)
    return tuple(out)


def vdash_rows(phi, psi, down_on_e, n_e):
    # rows of Gamma_psi^op Gamma_phi: row e collects {f <= phi(x)} over x with e in psi(x)
    rows = [0] * n_e
    for x in range(len(phi)):
        p = psi[x]
        d = down_on_e[phi[x]]
        e = 0
        while p:
            if p & 1:
                rows[e] |= d
            p >>= 1
            e += 1
    return rows

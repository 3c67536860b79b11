"""Pure-Python implementations of the hot kernels.

Tables are lists of lists of ints (row = left factor, column = right
factor).  Element 0 is always the identity.
"""
import numpy as np

BACKEND = "python"


def prepare_table(table):
    return np.asarray(table).tolist()


def closure(t, seed, gens):
    """Elements of the subgroup generated by ``gens``.

    ``seed`` may list elements already known to lie in the result; they
    are used as extra starting points for the search.
    """
    gens = [int(g) for g in gens]
    seen = {0}
    queue = [0]
    for s in seed:
        s = int(s)
        if s not in seen:
            seen.add(s)
            queue.append(s)
    i = 0
    while i < len(queue):
        row = t[queue[i]]
        i += 1
        for g in gens:
            y = row[g]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return np.array(sorted(seen), dtype=np.int32)


def right_cosets(t, sub):
    n = len(t)
    ids = [-1] * n
    sub = [int(s) for s in sub]
    c = 0
    for x in range(n):
        if ids[x] >= 0:
            continue
        for m in sub:
            ids[t[m][x]] = c
        c += 1
    return np.array(ids, dtype=np.int32), c


def element_orders(t):
    n = len(t)
    out = [0] * n
    for x in range(n):
        if out[x]:
            continue
        row = t[x]
        cur, k = x, 1
        while cur != 0:
            cur = row[cur]
            k += 1
        out[x] = k
    out[0] = 1
    return np.array(out, dtype=np.int32)


def extend_hom(t1, t2, order, parent, pgen, gens1, imgs):
    """Extend generator images to a map on all elements and verify it.

    ``order`` lists elements reachable from the identity along the tree
    ``parent``/``pgen`` (element = parent * gens1[pgen]).  Returns the image
    array if the extension is a homomorphism, else None.
    """
    n = len(t1)
    f = [0] * n
    for x in order[1:]:
        f[x] = t2[f[parent[x]]][imgs[pgen[x]]]
    for x in range(n):
        row1 = t1[x]
        row2 = t2[f[x]]
        for s in range(len(gens1)):
            if f[row1[gens1[s]]] != row2[imgs[s]]:
                return None
    return np.array(f, dtype=np.int32)

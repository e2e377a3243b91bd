"""Hot integer kernels over the dense dart encoding.

Darts are 0..4V-1, vertex v owns darts 4v..4v+3 in counterclockwise
rotation order, so sigma is implicit: sigma(d) = 4*(d//4) + (d+1) % 4.
All kernels are plain loops over int32/int64 arrays so that the same
source compiles under numba and runs unmodified in pure Python
(see _backend.USE_NUMBA / KNOTFACET_NUMBA).
"""

from __future__ import annotations

import numpy as np

from ._backend import jit_kernel


@jit_kernel
def orbit_count(perm):
    """Number of cycles of a permutation given as an int32 array."""
    n = perm.shape[0]
    seen = np.zeros(n, dtype=np.uint8)
    count = 0
    for i in range(n):
        if seen[i] == 0:
            count += 1
            j = i
            while seen[j] == 0:
                seen[j] = 1
                j = perm[j]
    return count


@jit_kernel
def face_permutation(alpha):
    """phi = sigma o alpha over the dense dart set."""
    n = alpha.shape[0]
    phi = np.empty(n, dtype=np.int32)
    for d in range(n):
        a = alpha[d]
        phi[d] = 4 * (a // 4) + (a + 1) % 4
    return phi


@jit_kernel
def connected_under_sigma_alpha(alpha):
    """True iff the darts form a single orbit under <sigma, alpha>."""
    n = alpha.shape[0]
    if n == 0:
        return True
    seen = np.zeros(n, dtype=np.uint8)
    stack = np.empty(n, dtype=np.int32)
    top = 0
    stack[top] = 0
    top += 1
    seen[0] = 1
    reached = 1
    while top > 0:
        top -= 1
        d = stack[top]
        s = 4 * (d // 4) + (d + 1) % 4
        a = alpha[d]
        if seen[s] == 0:
            seen[s] = 1
            reached += 1
            stack[top] = s
            top += 1
        if seen[a] == 0:
            seen[a] = 1
            reached += 1
            stack[top] = a
            top += 1
    return reached == n


@jit_kernel
def relabel_from_root(alpha, bits, root, out_alpha, out_bits):
    """Deterministic dense relabelling with `root` becoming dart 0.

    New vertex ids are assigned in first-visit order while scanning new
    dart labels 0,1,2,...; the visiting dart becomes rotation slot 0 of
    its vertex.  Writes the relabelled alpha (and per-vertex crossing
    bits, -1 when absent) into the out arrays.
    """
    n = alpha.shape[0]
    nv = n // 4
    new_of_old = np.full(n, -1, dtype=np.int32)
    old_of_new = np.full(n, -1, dtype=np.int32)
    vertex_seen = np.zeros(nv, dtype=np.uint8)

    def _assign(old_dart, next_vertex):
        v = old_dart // 4
        k = old_dart % 4
        base_new = 4 * next_vertex
        for j in range(4):
            od = 4 * v + (k + j) % 4
            nd = base_new + j
            new_of_old[od] = nd
            old_of_new[nd] = od
        vertex_seen[v] = 1

    next_vertex = 0
    _assign(root, next_vertex)
    next_vertex += 1
    for nd in range(n):
        od = old_of_new[nd]
        target = alpha[od]
        if vertex_seen[target // 4] == 0:
            _assign(target, next_vertex)
            next_vertex += 1
    for nd in range(n):
        od = old_of_new[nd]
        out_alpha[nd] = new_of_old[alpha[od]]
    for w in range(nv):
        od = old_of_new[4 * w]
        v = od // 4
        if bits[v] < 0:
            out_bits[w] = -1
        else:
            k = od % 4
            out_bits[w] = (bits[v] - k) % 4 % 2
    return 0


@jit_kernel
def canonical_arrays(alpha, bits):
    """Lexicographically least dense relabelling of (alpha, bits).

    Minimises over all root darts; sigma is fixed by the dense encoding,
    so this is canonical for orientation-preserving map isomorphism.
    """
    n = alpha.shape[0]
    nv = n // 4
    best_alpha = np.empty(n, dtype=np.int32)
    best_bits = np.empty(nv, dtype=np.int32)
    cur_alpha = np.empty(n, dtype=np.int32)
    cur_bits = np.empty(nv, dtype=np.int32)
    have = False
    for root in range(n):
        relabel_from_root(alpha, bits, root, cur_alpha, cur_bits)
        if not have:
            best_alpha[:] = cur_alpha
            best_bits[:] = cur_bits
            have = True
            continue
        smaller = False
        bigger = False
        for i in range(n):
            if cur_alpha[i] < best_alpha[i]:
                smaller = True
                break
            if cur_alpha[i] > best_alpha[i]:
                bigger = True
                break
        if not smaller and not bigger:
            for w in range(nv):
                if cur_bits[w] < best_bits[w]:
                    smaller = True
                    break
                if cur_bits[w] > best_bits[w]:
                    bigger = True
                    break
        if smaller:
            best_alpha[:] = cur_alpha
            best_bits[:] = cur_bits
    return best_alpha, best_bits


@jit_kernel
def bracket_state_counts(alpha, over_slot):
    """Brute-force Kauffman state sum tallies.

    over_slot[v] in {0,1} selects the over pair (4v+c, 4v+c+2).  Returns
    an int64 matrix counts[a, loops] over all 2^V smoothing states, where
    `a` is the number of A-smoothed crossings and `loops` the number of
    closed curves in the smoothed state.
    """
    n = alpha.shape[0]
    nv = n // 4
    counts = np.zeros((nv + 1, n // 2 + 2), dtype=np.int64)
    smooth = np.empty(n, dtype=np.int32)
    seen = np.empty(n, dtype=np.uint8)
    for state in range(1 << nv):
        a_count = 0
        for v in range(nv):
            c = over_slot[v]
            base = 4 * v
            if (state >> v) & 1:
                # A-smoothing: over dart joins its ccw neighbour.
                a_count += 1
                smooth[base + c] = base + (c + 1) % 4
                smooth[base + (c + 1) % 4] = base + c
                smooth[base + (c + 2) % 4] = base + (c + 3) % 4
                smooth[base + (c + 3) % 4] = base + (c + 2) % 4
            else:
                smooth[base + c] = base + (c + 3) % 4
                smooth[base + (c + 3) % 4] = base + c
                smooth[base + (c + 2) % 4] = base + (c + 1) % 4
                smooth[base + (c + 1) % 4] = base + (c + 2) % 4
        for i in range(n):
            seen[i] = 0
        orbits = 0
        for i in range(n):
            if seen[i] == 0:
                orbits += 1
                j = i
                while seen[j] == 0:
                    seen[j] = 1
                    j = smooth[alpha[j]]
        loops = orbits // 2
        counts[a_count, loops] += 1
    return counts


@jit_kernel
def strand_permutation(alpha):
    """tau = sigma^2 o alpha: the go-straight successor of an out-dart."""
    n = alpha.shape[0]
    tau = np.empty(n, dtype=np.int32)
    for d in range(n):
        a = alpha[d]
        tau[d] = 4 * (a // 4) + (a + 2) % 4
    return tau

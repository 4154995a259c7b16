"""Pure-numpy accumulation kernels for brute-force switch expansions.

Reference implementation of the hot loops; :mod:`switchsim._kernels` is the
compiled twin with identical semantics.  Multi-indices are streamed in
odometer order (last slot fastest) and accumulated into the output in place,
so results are deterministic and nothing of size ``prod(slot_sizes)`` is ever
materialised.

Inputs describe a family of operator chains:

* ``ops`` stacks every operator collection into one ``(n_ops, d, d)`` array;
  collection ``c`` occupies rows ``offsets[c]:offsets[c+1]``.
* each multi-index assigns one operator index per *slot*; ``slot_sizes[s]``
  is the index range of slot ``s``.
* branch ``m`` is the ordered matrix product (leftmost factor first) of the
  operators at positions ``(chain_slots[m, l], chain_colls[m, l])``, i.e.
  operator ``offsets[chain_colls[m, l]] + index[chain_slots[m, l]]``.
"""

from __future__ import annotations

from itertools import product

import numpy as np


def _chain_product(ops, offsets, chain_slots, chain_colls, m, idx):
    a = ops[offsets[chain_colls[m, 0]] + idx[chain_slots[m, 0]]]
    for l in range(1, chain_slots.shape[1]):
        a = a @ ops[offsets[chain_colls[m, l]] + idx[chain_slots[m, l]]]
    return a


def accumulate_switch_choi(ops, offsets, slot_sizes, chain_slots, chain_colls, ctrl, out):
    """Accumulate sum_j sum_v vec(u_{v,j}) vec(u_{v,j})^dag into ``out``.

    For multi-index j and control vector v, u_{v,j} stacks the M branch
    products scaled by ctrl[v, m]; vec() flattens row-major, so the output is
    indexed by (branch, out-row, in-column) pairs on both sides.
    """
    n_branches = chain_slots.shape[0]
    d = ops.shape[1]
    for idx in product(*(range(int(s)) for s in slot_sizes)):
        flat = np.empty((n_branches, d * d), dtype=np.complex128)
        for m in range(n_branches):
            flat[m] = _chain_product(ops, offsets, chain_slots, chain_colls, m, idx).reshape(-1)
        for v in range(ctrl.shape[0]):
            u = (ctrl[v][:, None] * flat).reshape(-1)
            out += np.outer(u, u.conj())


def accumulate_pair_choi(
    ops, offsets, slot_sizes, a_slots, a_colls, b_slots, b_colls, out
):
    """Accumulate sum_j vec(A_j) vec(B_j)^dag into ``out``.

    A_j and B_j are the chain products of the two single branches described
    by the (slots, colls) pairs; this is the Choi matrix of the sesquilinear
    map rho -> sum_j A_j rho B_j^dag.
    """
    a_slots2 = a_slots.reshape(1, -1)
    a_colls2 = a_colls.reshape(1, -1)
    b_slots2 = b_slots.reshape(1, -1)
    b_colls2 = b_colls.reshape(1, -1)
    for idx in product(*(range(int(s)) for s in slot_sizes)):
        a = _chain_product(ops, offsets, a_slots2, a_colls2, 0, idx).reshape(-1)
        b = _chain_product(ops, offsets, b_slots2, b_colls2, 0, idx).reshape(-1)
        out += np.outer(a, b.conj())

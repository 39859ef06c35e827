# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled validity scanner: the same chunked bit-parallel algorithm as the
pure backend, running on flat uint64 buffers with a recycled slot pool."""

from libc.stdlib cimport free, malloc
from libc.stdint cimport int64_t, uint64_t

from ._program import OP_AND, OP_BOT, OP_BOX, OP_DIA, OP_IMP, OP_NOT, OP_OR, OP_TOP, OP_VAR

BACKEND_NAME = "compiled"

cdef int C_BOT = OP_BOT
cdef int C_TOP = OP_TOP
cdef int C_VAR = OP_VAR
cdef int C_NOT = OP_NOT
cdef int C_AND = OP_AND
cdef int C_OR = OP_OR
cdef int C_IMP = OP_IMP
cdef int C_BOX = OP_BOX
cdef int C_DIA = OP_DIA

cdef uint64_t SMALL[6]
SMALL[0] = <uint64_t>0xAAAAAAAAAAAAAAAA
SMALL[1] = <uint64_t>0xCCCCCCCCCCCCCCCC
SMALL[2] = <uint64_t>0xF0F0F0F0F0F0F0F0
SMALL[3] = <uint64_t>0xFF00FF00FF00FF00
SMALL[4] = <uint64_t>0xFFFF0000FFFF0000
SMALL[5] = <uint64_t>0xFFFFFFFF00000000


def find_refuting_index(tuple up, int n_worlds, object program, int chunk_log2=20):
    """Index of the least refuting valuation, or -1 when valid."""
    cdef int n_vars = program.n_vars
    cdef int kn = n_vars * n_worlds
    if kn < 6 or kn > 62:
        raise ValueError("compiled scanner handles 6..62 valuation bits")
    cdef int64_t total_bits = (<int64_t>1) << kn
    cdef int clog = chunk_log2 if chunk_log2 < kn else kn
    if clog < 6:
        clog = 6
    cdef int64_t chunk_bits = (<int64_t>1) << clog
    cdef int64_t words = chunk_bits >> 6
    cdef int64_t stride = <int64_t>n_worlds * words

    ops_list = list(program.ops)
    last_use_list = list(program.last_use)
    cdef int n_ops = len(ops_list)
    cdef int max_live = program.max_live

    cdef int *op_code = <int *>malloc(n_ops * sizeof(int))
    cdef int *op_a = <int *>malloc(n_ops * sizeof(int))
    cdef int *op_b = <int *>malloc(n_ops * sizeof(int))
    cdef int *last_use = <int *>malloc(n_ops * sizeof(int))
    cdef int *slot_buf = <int *>malloc(n_ops * sizeof(int))
    cdef int *free_list = <int *>malloc(max_live * sizeof(int))
    cdef uint64_t *up_masks = <uint64_t *>malloc(n_worlds * sizeof(uint64_t))
    cdef uint64_t *buffers = <uint64_t *>malloc(
        <size_t>max_live * stride * sizeof(uint64_t))
    if (op_code == NULL or op_a == NULL or op_b == NULL or last_use == NULL
            or slot_buf == NULL or free_list == NULL or up_masks == NULL
            or buffers == NULL):
        free(op_code); free(op_a); free(op_b); free(last_use)
        free(slot_buf); free(free_list); free(up_masks); free(buffers)
        raise MemoryError()

    cdef int i, pc, v, u, t, bit, code, free_top, buf, a, b
    cdef int64_t base, w, base_words
    cdef int64_t result = -1
    cdef uint64_t *dst
    cdef uint64_t *src
    cdef uint64_t *src2
    cdef uint64_t fill, mask, acc

    try:
        for pc in range(n_ops):
            op_code[pc] = ops_list[pc][0]
            op_a[pc] = ops_list[pc][1]
            op_b[pc] = ops_list[pc][2]
            last_use[pc] = last_use_list[pc]
        for i in range(n_worlds):
            up_masks[i] = <uint64_t>up[i]

        base = 0
        while base < total_bits and result < 0:
            free_top = max_live
            for i in range(max_live):
                free_list[i] = i
            for pc in range(n_ops):
                free_top -= 1
                buf = free_list[free_top]
                slot_buf[pc] = buf
                dst = buffers + <size_t>buf * stride
                code = op_code[pc]
                a = op_a[pc]
                b = op_b[pc]
                if code == C_VAR:
                    for i in range(n_worlds):
                        t = a * n_worlds + i
                        if t >= clog:
                            fill = <uint64_t>0
                            if (base >> t) & 1:
                                fill = ~(<uint64_t>0)
                            for w in range(words):
                                dst[i * words + w] = fill
                        elif t >= 6:
                            base_words = base >> 6
                            for w in range(words):
                                bit = <int>(((base_words + w) >> (t - 6)) & 1)
                                dst[i * words + w] = <uint64_t>0 - <uint64_t>bit
                        else:
                            fill = SMALL[t]
                            for w in range(words):
                                dst[i * words + w] = fill
                elif code == C_TOP:
                    for w in range(stride):
                        dst[w] = ~(<uint64_t>0)
                elif code == C_BOT:
                    for w in range(stride):
                        dst[w] = <uint64_t>0
                elif code == C_NOT:
                    src = buffers + <size_t>slot_buf[a] * stride
                    for w in range(stride):
                        dst[w] = ~src[w]
                elif code == C_AND:
                    src = buffers + <size_t>slot_buf[a] * stride
                    src2 = buffers + <size_t>slot_buf[b] * stride
                    for w in range(stride):
                        dst[w] = src[w] & src2[w]
                elif code == C_OR:
                    src = buffers + <size_t>slot_buf[a] * stride
                    src2 = buffers + <size_t>slot_buf[b] * stride
                    for w in range(stride):
                        dst[w] = src[w] | src2[w]
                elif code == C_IMP:
                    src = buffers + <size_t>slot_buf[a] * stride
                    src2 = buffers + <size_t>slot_buf[b] * stride
                    for w in range(stride):
                        dst[w] = (~src[w]) | src2[w]
                elif code == C_BOX:
                    src = buffers + <size_t>slot_buf[a] * stride
                    for i in range(n_worlds):
                        mask = up_masks[i]
                        for w in range(words):
                            dst[i * words + w] = ~(<uint64_t>0)
                        for u in range(n_worlds):
                            if (mask >> u) & 1:
                                for w in range(words):
                                    dst[i * words + w] &= src[u * words + w]
                else:  # C_DIA
                    src = buffers + <size_t>slot_buf[a] * stride
                    for i in range(n_worlds):
                        mask = up_masks[i]
                        for w in range(words):
                            dst[i * words + w] = <uint64_t>0
                        for u in range(n_worlds):
                            if (mask >> u) & 1:
                                for w in range(words):
                                    dst[i * words + w] |= src[u * words + w]
                if code == C_NOT or code == C_BOX or code == C_DIA:
                    if last_use[a] == pc:
                        free_list[free_top] = slot_buf[a]
                        free_top += 1
                elif code == C_AND or code == C_OR or code == C_IMP:
                    if last_use[a] == pc:
                        free_list[free_top] = slot_buf[a]
                        free_top += 1
                    if b != a and last_use[b] == pc:
                        free_list[free_top] = slot_buf[b]
                        free_top += 1
            src = buffers + <size_t>slot_buf[n_ops - 1] * stride
            for w in range(words):
                acc = ~(<uint64_t>0)
                for i in range(n_worlds):
                    acc &= src[i * words + w]
                if acc != ~(<uint64_t>0):
                    acc = ~acc
                    bit = 0
                    while not (acc >> bit) & 1:
                        bit += 1
                    result = base + w * 64 + bit
                    break
            base += chunk_bits
        return result
    finally:
        free(op_code); free(op_a); free(op_b); free(last_use)
        free(slot_buf); free(free_list); free(up_masks); free(buffers)

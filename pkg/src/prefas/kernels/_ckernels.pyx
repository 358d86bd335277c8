# cython: boundscheck=False, wraparound=False, cdivision=True
"""C implementation of the enumeration kernels; see python.py for the contract.

Masks are limited to 64 rules / 64 distinct head literals, which is far above
the enumeration bounds the callers enforce.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport free, malloc


cdef uint64_t _minpos(uint64_t members, int n, uint64_t *head_bits,
                      uint64_t *pos_masks, unsigned char *pos_ok) noexcept nogil:
    cdef uint64_t lits = 0, done = 0, bit
    cdef int i, changed = 1
    while changed:
        changed = 0
        for i in range(n):
            bit = (<uint64_t>1) << i
            if (members & bit) and not (done & bit):
                if pos_ok[i] and (pos_masks[i] & ~lits) == 0:
                    done |= bit
                    lits |= head_bits[i]
                    changed = 1
    return done


cdef class _Tables:
    cdef int n
    cdef uint64_t *head_bits
    cdef uint64_t *pos_masks
    cdef uint64_t *remover
    cdef unsigned char *pos_ok

    def __cinit__(self, head_bits, pos_masks, pos_ok, remover=None):
        cdef int i
        self.n = len(head_bits)
        if self.n > 64:
            raise ValueError("kernel supports at most 64 rules")
        self.head_bits = <uint64_t *>malloc(self.n * sizeof(uint64_t))
        self.pos_masks = <uint64_t *>malloc(self.n * sizeof(uint64_t))
        self.remover = <uint64_t *>malloc(self.n * sizeof(uint64_t))
        self.pos_ok = <unsigned char *>malloc(self.n * sizeof(unsigned char))
        if (self.head_bits == NULL or self.pos_masks == NULL
                or self.remover == NULL or self.pos_ok == NULL):
            raise MemoryError()
        for i in range(self.n):
            self.head_bits[i] = head_bits[i]
            self.pos_masks[i] = pos_masks[i]
            self.pos_ok[i] = 1 if pos_ok[i] else 0
            self.remover[i] = remover[i] if remover is not None else 0

    def __dealloc__(self):
        free(self.head_bits)
        free(self.pos_masks)
        free(self.remover)
        free(self.pos_ok)


def minpos(members, head_bits, pos_masks, pos_ok):
    cdef _Tables t = _Tables(head_bits, pos_masks, pos_ok)
    return _minpos(<uint64_t>members, t.n, t.head_bits, t.pos_masks, t.pos_ok)


def enum_fixpoints(n, head_bits, pos_masks, pos_ok, remover):
    cdef _Tables t = _Tables(head_bits, pos_masks, pos_ok, remover)
    cdef uint64_t r, kept, total = (<uint64_t>1) << <int>n
    cdef int i
    out = []
    for r in range(total):
        kept = 0
        for i in range(t.n):
            if (t.remover[i] & r) == 0:
                kept |= (<uint64_t>1) << i
        if _minpos(kept, t.n, t.head_bits, t.pos_masks, t.pos_ok) == r:
            out.append(r)
    return out


def enum_closed(n, head_bits, pos_masks, pos_ok):
    cdef _Tables t = _Tables(head_bits, pos_masks, pos_ok)
    cdef uint64_t s, total = (<uint64_t>1) << <int>n
    out = []
    for s in range(total):
        if _minpos(s, t.n, t.head_bits, t.pos_masks, t.pos_ok) == s:
            out.append(s)
    return out

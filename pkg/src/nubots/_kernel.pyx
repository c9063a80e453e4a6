# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled agitation/movable-set kernel.

Mirrors ``_fallback.Kernel`` (see there for the packed layout and the
algorithm description) on C arrays with an open-addressing hash over
positions.  Selected automatically by ``kinetics`` when importable.
"""

from libc.stdlib cimport calloc, free, malloc

BACKEND = "c"

cdef inline unsigned long long _mix(long long x, long long y) nogil:
    cdef unsigned long long k = (<unsigned long long> x) * 0x9E3779B97F4A7C15ULL
    k ^= (<unsigned long long> y) + 0xBF58476D1CE4E5B9ULL + (k << 6) + (k >> 2)
    k ^= k >> 31
    return k


cdef class Kernel:
    cdef long long *xs
    cdef long long *ys
    cdef int *nbr_idx
    cdef signed char *nbr_bond
    cdef long long *hkx
    cdef long long *hky
    cdef int *hval
    cdef unsigned long long hmask
    cdef int n
    cdef unsigned char *in_set
    cdef int *queue

    def __cinit__(self, pts, index, nbr_idx, nbr_bond):
        cdef int n = len(pts)
        cdef int i, d
        cdef unsigned long long cap = 16
        while cap < <unsigned long long> (2 * n + 2):
            cap <<= 1
        self.n = n
        self.xs = <long long *> malloc(n * sizeof(long long))
        self.ys = <long long *> malloc(n * sizeof(long long))
        self.nbr_idx = <int *> malloc(n * 6 * sizeof(int))
        self.nbr_bond = <signed char *> malloc(n * 6 * sizeof(signed char))
        self.hkx = <long long *> malloc(cap * sizeof(long long))
        self.hky = <long long *> malloc(cap * sizeof(long long))
        self.hval = <int *> malloc(cap * sizeof(int))
        self.in_set = <unsigned char *> calloc(n if n else 1, 1)
        self.queue = <int *> malloc((n if n else 1) * sizeof(int))
        self.hmask = cap - 1
        for i in range(<int> cap):
            self.hval[i] = -1
        for i in range(n):
            p = pts[i]
            self.xs[i] = p[0]
            self.ys[i] = p[1]
            self._hput(p[0], p[1], i)
        for i in range(n * 6):
            self.nbr_idx[i] = nbr_idx[i]
            self.nbr_bond[i] = nbr_bond[i]

    def __dealloc__(self):
        free(self.xs); free(self.ys)
        free(self.nbr_idx); free(self.nbr_bond)
        free(self.hkx); free(self.hky); free(self.hval)
        free(self.in_set); free(self.queue)

    cdef void _hput(self, long long x, long long y, int v) nogil:
        cdef unsigned long long h = _mix(x, y) & self.hmask
        while self.hval[h] != -1:
            h = (h + 1) & self.hmask
        self.hkx[h] = x
        self.hky[h] = y
        self.hval[h] = v

    cdef int _hget(self, long long x, long long y) nogil:
        cdef unsigned long long h = _mix(x, y) & self.hmask
        while self.hval[h] != -1:
            if self.hkx[h] == x and self.hky[h] == y:
                return self.hval[h]
            h = (h + 1) & self.hmask
        return -1

    cdef int _collect(self, int seed, int base, long long vx, long long vy) nogil:
        """Greedy growth; returns count, or -1 when the base is absorbed.

        Visited indices are left in self.queue[:count]; self.in_set is
        reset before returning.
        """
        cdef int head = 0, tail = 0, count = 0
        cdef int xi, yi, occ, d, row
        cdef long long tx, ty, dx, dy, adx, ady, ads
        cdef signed char t
        cdef int blocked = 0
        self.in_set[seed] = 1
        self.queue[tail] = seed
        tail += 1
        count = 1
        while head < tail and not blocked:
            xi = self.queue[head]
            head += 1
            tx = self.xs[xi] + vx
            ty = self.ys[xi] + vy
            occ = self._hget(tx, ty)
            if occ >= 0 and not self.in_set[occ]:
                if occ == base:
                    blocked = 1
                    break
                self.in_set[occ] = 1
                self.queue[tail] = occ
                tail += 1
                count += 1
            row = xi * 6
            for d in range(6):
                t = self.nbr_bond[row + d]
                if t == 0:
                    continue
                yi = self.nbr_idx[row + d]
                if self.in_set[yi]:
                    continue
                if yi == base and xi == seed:
                    continue
                if t == 2:
                    dx = tx - self.xs[yi]
                    dy = ty - self.ys[yi]
                    adx = -dx if dx < 0 else dx
                    ady = -dy if dy < 0 else dy
                    ads = dx + dy
                    if ads < 0:
                        ads = -ads
                    if adx + ady + ads == 2:
                        continue
                if yi == base:
                    blocked = 1
                    break
                self.in_set[yi] = 1
                self.queue[tail] = yi
                tail += 1
                count += 1
        # reset membership flags for the next call
        for d in range(tail):
            self.in_set[self.queue[d]] = 0
        return -1 if blocked else tail

    def agitation_set(self, int seed, long long vx, long long vy):
        cdef int cnt = self._collect(seed, -1, vx, vy)
        cdef int i
        return [self.queue[i] for i in range(cnt)]

    def movable_set(self, int arm, int base, long long vx, long long vy):
        cdef int cnt = self._collect(arm, base, vx, vy)
        cdef int i
        if cnt < 0:
            return None
        return [self.queue[i] for i in range(cnt)]

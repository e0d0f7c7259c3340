"""Pure-Python twin of ``_ckernels``; selected when the extension is absent."""

BACKEND = "python"

MASK128 = (1 << 128) - 1


class TrialKernel:
    """Scores and materializes compression trials for a fixed sorted input."""

    def __init__(self, values, m, threshold):
        self.values = values
        self.m = m
        self.threshold = threshold
        self._residues = [a & MASK128 for a in values]

    def stats(self, u):
        m, thr = self.m, self.threshold
        counts = {}
        b = c = pairs = 0
        for a in self._residues:
            x = m * ((a * u) & MASK128)
            if x & MASK128 <= thr:
                phi = x >> 128
                seen = counts.get(phi, 0)
                b += 1
                pairs += seen
                if not seen:
                    c += 1
                counts[phi] = seen + 1
        return b, c, pairs

    def select(self, u):
        m, thr = self.m, self.threshold
        counts = {}
        b = pairs = 0
        idx, img = [], []
        for i, a in enumerate(self._residues):
            x = m * ((a * u) & MASK128)
            if x & MASK128 <= thr:
                phi = x >> 128
                seen = counts.get(phi, 0)
                b += 1
                pairs += seen
                if not seen:
                    idx.append(i)
                    img.append(phi)
                counts[phi] = seen + 1
        return b, pairs, idx, img


def singer_scan(q, mod, prim, count):
    m0, m1, m2 = mod[0], mod[1], mod[2]
    p0, p1, p2 = prim
    x0, x1, x2 = 1, 0, 0
    out = []
    for j in range(count):
        if x2 == 0:
            out.append(j)
        d0 = x0 * p0
        d1 = x0 * p1 + x1 * p0
        d2 = x0 * p2 + x1 * p1 + x2 * p0
        d3 = x1 * p2 + x2 * p1
        c = (x2 * p2) % q
        d3 -= c * m2
        d2 -= c * m1
        d1 -= c * m0
        c = d3 % q
        d2 -= c * m2
        d1 -= c * m1
        d0 -= c * m0
        x0, x1, x2 = d0 % q, d1 % q, d2 % q
    return out

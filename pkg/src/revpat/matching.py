"""Backtracking engine that embeds formula fragments into target words.

One routine serves both occurrence testing (images are concrete words, a
barred symbol takes the reversed image) and divisibility testing (images
are patterns, a barred symbol takes the bar-flipped reversed image): the
caller supplies the bar transform and the candidate host words.

Search order, which fixes the witness returned:

* fragments are placed one at a time; the end-anchored fragment (if any)
  goes first, then at each step the unplaced fragment with the most
  already-known symbol images (ties: fewer unbound variables, then longer,
  then fragment index);
* host words are tried in the given order, start positions ascending;
* an unbound variable tries image lengths ascending; for the end-anchored
  fragment the final suffix length is the outermost loop.

Symbols with known images are verified by direct slice comparison.  An
unbound symbol adjacent to a known image enumerates its candidate lengths
with ``str.find``/``str.rfind`` so scans run at C speed, and an anchored
fragment whose last variable occurs again pivots on that earlier
occurrence, turning the middle section into a fixed-span match.
"""

from revpat.words import DIGITS

_DIGSET = frozenset(DIGITS)


def _compile(fragment):
    """Fragment to ops: (base variable, barred, literal) per symbol."""
    ops = []
    for s in fragment:
        if s in _DIGSET:
            ops.append((None, False, s))
        else:
            ops.append((s.lower(), s.isupper(), None))
    return tuple(ops)


def find_embedding(fragments, targets, bar, cap=None, anchor_fragment=None,
                   memo=True):
    """Search for variable images embedding every fragment into some target.

    fragments: iterable of patterns (lowercase variable, uppercase barred,
      digits literal).
    targets: host words; each fragment's image must be a factor of one.
    bar: involution giving the image of a barred symbol from the plain one.
    cap: optional maximum image length per variable.
    anchor_fragment: optional fragment index whose image must end exactly at
      the end of the single target.
    memo: remember dead binding states across placements; pays off in
      exhaustion proofs, wasted in one-shot incremental checks.

    Returns the first binding dict (base variable -> image) in search
    order, or None.
    """
    frags = [_compile(str(f)) for f in fragments]
    hosts = [str(t) for t in targets]
    if anchor_fragment is not None and len(hosts) != 1:
        raise ValueError("anchored search needs exactly one target")
    plain = {}
    mirrored = {}  # mirrored[v] = bar(plain[v]), filled at bind time
    remaining = set(range(len(frags)))
    solution = []
    failed_states = set() if memo else None

    def bind(base, barred, raw):
        if barred:
            plain[base] = bar(raw)
            mirrored[base] = raw
        else:
            plain[base] = raw
            mirrored[base] = bar(raw)

    def unbind(base):
        del plain[base]
        del mirrored[base]

    def img_of(op):
        base, barred, lit = op
        if lit is not None:
            return lit
        return (mirrored if barred else plain).get(base)

    def min_len(ops, start, stop):
        total = 0
        for base, _, lit in ops[start:stop]:
            if lit is not None:
                total += 1
            else:
                img = plain.get(base)
                total += 1 if img is None else len(img)
        return total

    def order_key(fi):
        ops = frags[fi]
        bound = 0
        unbound = set()
        for base, _, lit in ops:
            if lit is not None or base in plain:
                bound += 1
            else:
                unbound.add(base)
        return (-bound, len(unbound), -len(ops), fi)

    def place_fwd(ops, t, i, pos, end_req, done):
        n = len(ops)
        while i < n:
            img = img_of(ops[i])
            if img is not None:
                if t.startswith(img, pos):
                    pos += len(img)
                    if end_req is not None and pos > end_req:
                        return False
                    i += 1
                    continue
                return False
            limit = len(t) if end_req is None else end_req
            maxl = limit - pos - min_len(ops, i + 1, n)
            if cap is not None and cap < maxl:
                maxl = cap
            if maxl < 1:
                return False
            base, barred, _ = ops[i]
            nxt = img_of(ops[i + 1]) if i + 1 < n else None
            if nxt is not None:
                # candidate lengths are distances to occurrences of the
                # next symbol's known image
                lo = pos + 1
                hi = pos + maxl + len(nxt)
                find = t.find
                while True:
                    q = find(nxt, lo, hi)
                    if q < 0:
                        return False
                    bind(base, barred, t[pos:q])
                    if place_fwd(ops, t, i + 2, q + len(nxt), end_req, done):
                        return True
                    unbind(base)
                    lo = q + 1
            for ln in range(1, maxl + 1):
                bind(base, barred, t[pos:pos + ln])
                if place_fwd(ops, t, i + 1, pos + ln, end_req, done):
                    return True
                unbind(base)
            return False
        if end_req is not None and pos != end_req:
            return False
        return done()

    def place_bwd(ops, t, i, pos, done):
        # image ends are pinned; pos is the current right boundary
        while i >= 0:
            img = img_of(ops[i])
            if img is not None:
                start = pos - len(img)
                if start >= 0 and t.startswith(img, start):
                    pos = start
                    i -= 1
                    continue
                return False
            maxl = pos - min_len(ops, 0, i)
            if cap is not None and cap < maxl:
                maxl = cap
            if maxl < 1:
                return False
            base, barred, _ = ops[i]
            prv = img_of(ops[i - 1]) if i >= 1 else None
            if prv is not None:
                # the previous symbol's known image must end where ours starts
                hi = pos - 1
                lo_end = pos - maxl
                rfind = t.rfind
                while True:
                    p = rfind(prv, 0, hi)
                    if p < 0:
                        return False
                    end = p + len(prv)
                    if end < lo_end:
                        return False
                    bind(base, barred, t[end:pos])
                    if place_bwd(ops, t, i - 2, p, done):
                        return True
                    unbind(base)
                    hi = end - 1
            for ln in range(1, maxl + 1):
                bind(base, barred, t[pos - ln:pos])
                if place_bwd(ops, t, i - 1, pos - ln, done):
                    return True
                unbind(base)
            return False
        return done()

    def place_anchored(ops, t, done):
        """Place a fragment so its image ends exactly at the end of t."""
        n = len(ops)
        L = len(t)
        if min_len(ops, 0, n) > L:
            return False
        last_base, last_barred, last_lit = ops[n - 1]
        if n >= 2 and last_lit is None and last_base not in plain:
            pivot = next(
                (j for j in range(n - 1) if ops[j][0] == last_base), None
            )
            if pivot is not None:
                # bind the suffix, then anchor the earlier occurrence of the
                # same variable with a C-speed scan; the section between the
                # two occurrences becomes a fixed-span match
                left, mid = ops[:pivot], ops[pivot + 1:n - 1]
                maxl = L - min_len(ops, 0, n - 1)
                if cap is not None and cap < maxl:
                    maxl = cap
                find = t.find
                for a in range(1, maxl + 1):
                    bind(last_base, last_barred, t[L - a:L])
                    img_p = img_of(ops[pivot])
                    lo = min_len(ops, 0, pivot)
                    hi = L - a - min_len(ops, pivot + 1, n - 1) - len(img_p)
                    q = find(img_p, lo, hi + len(img_p))
                    seen = q >= 0
                    while q >= 0:
                        mid_start = q + len(img_p)
                        mid_end = L - a

                        def after_mid(q=q):
                            if not left:
                                return done()
                            return place_bwd(left, t, len(left) - 1, q, done)

                        if mid:
                            ok = place_fwd(mid, t, 0, mid_start, mid_end, after_mid)
                        else:
                            ok = mid_start == mid_end and after_mid()
                        if ok:
                            return True
                        q = find(img_p, q + 1, hi + len(img_p))
                    unbind(last_base)
                    if not seen and a > 1:
                        # a longer suffix contains this one, so no further
                        # suffix can reappear either
                        break
                return False
        return place_bwd(ops, t, n - 1, L, done)

    def try_fragment(fi, done):
        ops = frags[fi]
        if fi == anchor_fragment:
            return place_anchored(ops, hosts[0], done)
        known = [img_of(op) for op in ops]
        if all(img is not None for img in known):
            image = "".join(known)
            if any(image in t for t in hosts):
                return done()
            return False
        ml = min_len(ops, 0, len(ops))
        first = known[0]
        bound_imgs = {img for img in known if img is not None}
        for t in hosts:
            if ml > len(t):
                continue
            if any(img not in t for img in bound_imgs):
                continue
            if first is not None:
                hi = len(t) - ml + len(first)
                pos = t.find(first, 0, hi)
                while pos >= 0:
                    if place_fwd(ops, t, 0, pos, None, done):
                        return True
                    pos = t.find(first, pos + 1, hi)
            else:
                for pos in range(len(t) - ml + 1):
                    if place_fwd(ops, t, 0, pos, None, done):
                        return True
        return False

    def solve():
        if not remaining:
            solution.append(dict(plain))
            return True
        state = None
        if failed_states is not None:
            state = (tuple(sorted(plain.items())), tuple(sorted(remaining)))
            if state in failed_states:
                return False
        if anchor_fragment in remaining:
            fi = anchor_fragment
        elif len(remaining) == 1:
            fi = next(iter(remaining))
        else:
            fi = min(remaining, key=order_key)
        remaining.discard(fi)
        if try_fragment(fi, solve):
            return True
        remaining.add(fi)
        if failed_states is not None:
            failed_states.add(state)
        return False

    if solve():
        return solution[0]
    return None

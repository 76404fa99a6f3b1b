"""Bounded depth-first search for words avoiding formulas.

Words are grown letter by letter.  Appending a letter can only create an
occurrence whose image uses the new final position, so each extension is
vetted with the end-anchored occurrence test.  The first letter is fixed
and every new letter may exceed the letters used so far by at most one,
which is harmless because avoidance is invariant under permuting the
alphabet.
"""

import time
from dataclasses import dataclass

from revpat.occurrence import avoids, occurs_ending_at
from revpat.words import DIGITS

EXACT_LONGEST = "exact-longest"
FOUND_WORD = "found-word"
CAP_EXCEEDED = "cap-exceeded"


@dataclass(frozen=True)
class SearchOutcome:
    kind: str
    length: int
    witness: str
    nodes: int
    exhausted: bool

    def summary(self):
        return f"{self.kind}={self.length} witness={self.witness or '-'} nodes={self.nodes}"


class BudgetExceeded(Exception):
    pass


def _dfs(formulas, k, limit, node_budget, time_budget):
    """Exhaust the tree of avoiding words up to the length limit.

    Returns (best word, reached-limit word or None, nodes, exhausted).
    """
    if k < 1 or k > len(DIGITS):
        raise ValueError("alphabet size out of range")
    deadline = time.monotonic() + time_budget if time_budget else None
    nodes = 0
    best = ""
    stack = [("", 0, iter(range(min(k, 1))))]
    while stack:
        word, max_used, letters = stack[-1]
        try:
            c = next(letters)
        except StopIteration:
            stack.pop()
            continue
        candidate = word + DIGITS[c]
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            return best, None, nodes, False
        if deadline is not None and nodes % 1024 == 0 and time.monotonic() > deadline:
            return best, None, nodes, False
        if any(occurs_ending_at(f, candidate) for f in formulas):
            continue
        if len(candidate) > len(best):
            best = candidate
        if len(candidate) >= limit:
            return best, candidate, nodes, False
        used = max(max_used, c)
        stack.append((candidate, used, iter(range(min(k, used + 2)))))
    return best, None, nodes, True


def _verify(word, formulas):
    return all(avoids(word, f) for f in formulas)


def longest_avoiding_word(formula, k, cap, node_budget=None, time_budget=None):
    """Exact longest avoiding word when the search tree is exhausted.

    The cap bounds the word length that will be explored; finding a word of
    the cap length means the maximum cannot be certified and the outcome is
    cap-exceeded, as it is when a node or time budget runs out.
    """
    best, at_limit, nodes, exhausted = _dfs(
        [formula], k, cap, node_budget, time_budget
    )
    witness = at_limit or best
    assert _verify(witness, [formula]) if witness else True
    if exhausted:
        return SearchOutcome(EXACT_LONGEST, len(best), best, nodes, True)
    return SearchOutcome(CAP_EXCEEDED, len(witness), witness, nodes, False)


def find_avoiding_word(formulas, k, target_len, node_budget=None, time_budget=None):
    """A single word of the target length avoiding every formula."""
    formulas = list(formulas)
    best, at_limit, nodes, exhausted = _dfs(
        formulas, k, target_len, node_budget, time_budget
    )
    if at_limit is not None:
        assert _verify(at_limit, formulas)
        return SearchOutcome(FOUND_WORD, len(at_limit), at_limit, nodes, False)
    if exhausted:
        # the tree ran out below the target: the best word is exactly longest
        return SearchOutcome(EXACT_LONGEST, len(best), best, nodes, True)
    return SearchOutcome(CAP_EXCEEDED, len(best), best, nodes, False)

"""Avoidance-basis verification: inventory chains, basis conditions, minimality.

The inventory chain starts from the unavoidable single-fragment formulas
and repeatedly extends every inventory member by every pool pattern.  An
extension that stays unavoidable (and is new up to mutual e-division)
enters the next inventory; an avoidable extension must be e-divisible by a
candidate-basis member, and any that is not is recorded as a failure.  A
candidate basis passes condition 1 when a chain terminates with an empty
inventory and no failures, and condition 2 when no member properly
e-divides another.
"""

import hashlib
import os
from dataclasses import dataclass, field

from revpat.decidability import is_unavoidable
from revpat.divisibility import canonical_form, divides, e_divides
from revpat.formulas import (
    Formula,
    PHI2,
    PHI3,
    PHI3_REVERSED_ROWS,
    irr,
    parse_formula,
    reverse_formula,
    simplifications,
    two_way_variables,
)
from revpat.words import flatten


@dataclass(frozen=True)
class PoolConstraints:
    num_vars: int
    max_len: int
    letters: frozenset | None = None  # allowed signed letters; None = all
    forbidden_flat_factors: tuple = ()

    def describe(self):
        letters = "".join(sorted(self.letters)) if self.letters else "all"
        return (
            f"vars={self.num_vars} maxlen={self.max_len} "
            f"letters={letters} forbidden={','.join(self.forbidden_flat_factors) or '-'}"
        )

    def digest(self):
        return hashlib.sha256(self.describe().encode()).hexdigest()[:12]


def unavoidable_pattern_pool(constraints):
    """Every unavoidable pattern satisfying the constraints, in order."""
    from revpat.decidability import all_patterns

    pool = []
    for p in all_patterns(constraints.max_len, constraints.num_vars):
        if constraints.letters is not None and not set(p) <= constraints.letters:
            continue
        flat = flatten(p)
        if any(bad in flat for bad in constraints.forbidden_flat_factors):
            continue
        if is_unavoidable(Formula([p])).unavoidable:
            pool.append(p)
    return tuple(pool)


def seed_inventory(pool):
    """Single-fragment inventory members, deduplicated up to e-division."""
    members = {}
    for p in pool:
        formula = Formula([p])
        members.setdefault(canonical_form(formula), formula)
    return [members[k] for k in sorted(members)]


def next_inventory(inventory, pool, reference, *, use_e_division=True):
    """One chain step: extended inventory plus avoidable-extension failures.

    Every (member, pattern) product is tried; products with a redundant
    fragment are skipped, unavoidable novel products are collected, and
    avoidable products must be e-divisible (or divisible, when
    use_e_division is false) by some reference formula.
    """
    new_members = {}
    failures = []
    checked_avoidable = 0
    for phi in inventory:
        k = len(phi.fragments)
        for p in pool:
            if p in phi:
                continue
            candidate = Formula(phi.fragments + (p,))
            if len(candidate.fragments) != k + 1:
                continue
            if any(
                a != b and a in b
                for a in candidate.fragments
                for b in candidate.fragments
            ):
                continue
            if is_unavoidable(candidate).unavoidable:
                key = canonical_form(candidate)
                if key not in new_members:
                    new_members[key] = parse_formula(key)
            else:
                checked_avoidable += 1
                relate = e_divides if use_e_division else divides
                if not any(relate(m, candidate) for m in reference):
                    failures.append(candidate)
    members = [new_members[k] for k in sorted(new_members)]
    return members, failures, checked_avoidable


@dataclass
class ChainReport:
    name: str
    pool_size: int
    sizes: list = field(default_factory=list)  # (k, inventory size)
    failures: list = field(default_factory=list)
    avoidable_checked: int = 0
    terminated_k: int | None = None

    @property
    def ok(self):
        return self.terminated_k is not None and not self.failures


def _checkpoint_path(directory, name, k):
    return os.path.join(directory, f"{name}-U{k}.txt")


def write_checkpoint(path, k, num_vars, digest, members):
    with open(path, "w") as fh:
        fh.write(f"U k={k} alphabet={num_vars} constraints={digest}\n")
        for m in members:
            fh.write(str(m) + "\n")


def read_checkpoint(path, k, num_vars, digest):
    if not os.path.exists(path):
        return None
    with open(path) as fh:
        header = fh.readline().strip()
        if header != f"U k={k} alphabet={num_vars} constraints={digest}":
            return None
        return [parse_formula(line.strip()) for line in fh if line.strip()]


def run_chain(
    name,
    constraints,
    reference,
    *,
    max_k=32,
    checkpoint_dir=None,
    use_e_division=True,
    progress=None,
):
    """Iterate inventories from the single-pattern seed until one is empty."""
    pool = unavoidable_pattern_pool(constraints)
    report = ChainReport(name, len(pool))
    inventory = seed_inventory(pool)
    k = 1
    digest = constraints.digest()
    while k <= max_k:
        report.sizes.append((k, len(inventory)))
        if progress:
            progress(f"{name}: |U_{k}| = {len(inventory)}")
        if not inventory:
            report.terminated_k = k
            break
        nxt = None
        if checkpoint_dir:
            os.makedirs(checkpoint_dir, exist_ok=True)
            nxt = read_checkpoint(
                _checkpoint_path(checkpoint_dir, name, k + 1),
                k + 1,
                constraints.num_vars,
                digest,
            )
        if nxt is None:
            nxt, failures, checked = next_inventory(
                inventory, pool, reference, use_e_division=use_e_division
            )
            report.failures.extend(failures)
            report.avoidable_checked += checked
            if checkpoint_dir and not failures:
                write_checkpoint(
                    _checkpoint_path(checkpoint_dir, name, k + 1),
                    k + 1,
                    constraints.num_vars,
                    digest,
                    nxt,
                )
        inventory = nxt
        k += 1
    return report


def verify_condition2(members):
    """No member may properly e-divide another; return offending pairs."""
    offenders = []
    for i, a in enumerate(members):
        for j, b in enumerate(members):
            if i != j and e_divides(a, b) is not None:
                offenders.append((a, b))
    return not offenders, offenders


def phi3_reference():
    """Basis members plus the mirror companions of the paired rows."""
    from revpat.divisibility import canonicalize

    companions = tuple(
        canonicalize(reverse_formula(m)) for m in PHI3_REVERSED_ROWS
    )
    return PHI3 + companions


def verify_phi2_condition1(checkpoint_dir=None, progress=None):
    """Two-variable chain: terminates empty with no failures for the basis."""
    constraints = PoolConstraints(num_vars=2, max_len=3)
    return run_chain(
        "sigma2",
        constraints,
        PHI2,
        checkpoint_dir=checkpoint_dir,
        progress=progress,
    )


def phi3_branch_constraints():
    """The filtered three-variable enumerations, by two-way profile."""
    return {
        # all three variables two-way: fragment length at most 2
        "three-two-way": PoolConstraints(num_vars=3, max_len=2),
        # exactly two two-way: one variable loses its bar, length at most 4
        "two-two-way": PoolConstraints(
            num_vars=3, max_len=4, letters=frozenset("xyzXY")
        ),
        # exactly one two-way: only x keeps its bar; one rotation order of
        # the one-way variables around x is excluded
        "one-two-way": PoolConstraints(
            num_vars=3,
            max_len=7,
            letters=frozenset("xyzX"),
            forbidden_flat_factors=("zxy",),
        ),
    }


def verify_phi3_condition1(checkpoint_dir=None, progress=None):
    """Three filtered chains; classical members are data, not re-derived."""
    reference = phi3_reference()
    reports = {}
    for name, constraints in phi3_branch_constraints().items():
        reports[name] = run_chain(
            name,
            constraints,
            reference,
            checkpoint_dir=checkpoint_dir,
            progress=progress,
        )
    reports["classical"] = classical_members()
    return reports


def classical_members():
    """Basis members with no barred letters (accepted as given data)."""
    return [m for m in PHI3 if not any(c.isupper() for c in str(m))]


def pattern_precheck_sigma3(reference=None, progress=None):
    """Every avoidable pattern on three variables up to length 8 must be
    e-divisible by a reference formula; patterns whose flattening contains
    a square are excluded from the scan.
    """
    from revpat.decidability import all_patterns

    if reference is None:
        reference = phi3_reference()
    total = skipped = unavoidable = 0
    failures = []
    for p in all_patterns(8, 3):
        total += 1
        flat = flatten(p)
        if _has_square(flat):
            skipped += 1
            continue
        formula = Formula([p])
        if is_unavoidable(formula).unavoidable:
            unavoidable += 1
            continue
        if not any(e_divides(m, formula) for m in reference):
            failures.append(formula)
        if progress and total % 200000 == 0:
            progress(f"pattern precheck: {total} scanned")
    return {
        "total": total,
        "skipped_square_flattening": skipped,
        "unavoidable": unavoidable,
        "failures": failures,
    }


def _has_square(word):
    n = len(word)
    for i in range(n):
        for half in range(1, (n - i) // 2 + 1):
            if word[i:i + half] == word[i + half:i + 2 * half]:
                return True
    return False


def reduction_filters(formula):
    """Which enumeration reduction applies to a three-variable formula."""
    if len(formula.variables()) > 3:
        raise ValueError("reductions are defined over three variables")
    two_way = len(two_way_variables(formula))
    max_frag = formula.max_fragment_length()
    if two_way == 0:
        return "classical"
    if two_way == 3:
        return "three-two-way" if max_frag >= 3 else "none"
    if two_way == 2:
        return "two-two-way" if max_frag >= 5 else "none"
    flats = {flatten(f) for f in formula.fragments}

    def has_flat_factor(target):
        return any(target in f for f in flats)

    x = two_way_variables(formula)[0]
    others = [v for v in formula.variables() if v != x]
    if len(others) == 2:
        y, z = others
        if has_flat_factor(y + x + z) and has_flat_factor(z + x + y):
            return "one-two-way"
    return "none"


def is_minimal(formula):
    """Avoidable with every simplification unavoidable; input irredundant."""
    if irr(formula) != formula:
        raise ValueError("minimality is defined for irredundant formulas; apply irr first")
    if is_unavoidable(formula).unavoidable:
        return False
    return all(
        is_unavoidable(simp).unavoidable for _, simp in simplifications(formula)
    )

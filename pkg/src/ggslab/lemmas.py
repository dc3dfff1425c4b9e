"""Machine checks for the desk-verifiable computational lemmas.

Each check_* function examines one concrete input and reports exactly what it
found; each sweep_* function drives a seeded random sweep (or an exhaustive
scan) and returns a JSON-ready report dict

    {"lemma", "seed", "cases_run", "passed", "skipped", "counterexamples"}

with three-valued semantics: a case whose hypotheses fail is skipped, never
silently passed. Quantities that admit two independent computations (exponent
profiles most of all) are computed both ways and cross-checked on every call;
a mismatch raises CrossCheckError rather than entering the report as data.
"""

import itertools
import random
from dataclasses import dataclass

from .errors import CrossCheckError, InputError
from .fp import circulant_rank
from .words import normalize, format_word, random_word
from .core import FAMILY_CONSTANT, make_ggs
from .quotients import maximal_subgroups_census
from . import model as _model

SWEEP_MAX_FACTORS = 6  # conjugate factors (b^j)^(a^l) per random element


@dataclass(frozen=True)
class ExponentProfile:
    """Per-letter exponent pairs of an element g of st(1) with g = b^t mod G'.

    pairs[r] = (n_u, m_u) for the letter u with residue r (letter p sits at
    r = 0), where section(g, u) = a^{n_u} b^{m_u} mod G'.
    """

    p: int
    t: int
    pairs: tuple

    def __post_init__(self):
        if sum(m for _, m in self.pairs) % self.p != self.t % self.p:
            raise CrossCheckError("profile m-column does not sum to t")

    def n(self, letter):
        return self.pairs[letter % self.p][0]

    def m(self, letter):
        return self.pairs[letter % self.p][1]

    def by_letter(self):
        """Pairs listed for letters 1, ..., p."""
        return [self.pairs[u % self.p] for u in range(1, self.p + 1)]


@dataclass(frozen=True)
class CaseVerdict:
    """Outcome of the split-case classification.

    Case 1: some section is congruent to a pure nonzero b-power; `letter`
    holds the witness u and `j0` its exponent. Case 2: `a_witnesses` are two
    letters with n_u != lambda * m_u and `m_witnesses` two letters with
    m_u != 0.
    """

    case: int
    letter: int = None
    j0: int = None
    a_witnesses: tuple = None
    m_witnesses: tuple = None


def _letters_in_order(p):
    """Letters 1, ..., p as residues (p last, as residue 0)."""
    return [u % p for u in range(1, p + 1)]


def exponent_profile(group, g):
    """Profile of g in st(1) with abelianization (0, t), t != 0.

    Computed two independent ways and cross-checked: once through the actual
    first-level sections, once through the conjugate decomposition
    g = prod_k (b^{j_k})^{a^{l_k}} read off the normal form, which gives
    m_u = sum of j_k over k with l_k = u and n_u = sum_j e_j m_{u-j}.
    """
    p = group.p
    ta, tb = g.abelianize()
    if ta != 0:
        raise InputError("exponent profile needs an element of st(1)")
    if tb == 0:
        raise InputError("exponent profile needs g = b^t mod G' with t != 0")

    # route 1: sections
    direct = []
    for r in range(p):
        direct.append(g.section(group.p if r == 0 else r).abelianize())

    # route 2: conjugate decomposition from the word
    w = g.word
    ms = [0] * p
    s = w.leading_a
    for beta, alpha in w.body:
        ms[(-s) % p] = (ms[(-s) % p] + beta) % p
        s = (s + alpha) % p
    ns = [0] * p
    for u in range(p):
        ns[u] = sum(group.e[j - 1] * ms[(u - j) % p] for j in range(1, p)) % p

    derived = [(ns[r], ms[r]) for r in range(p)]
    if derived != direct:
        raise CrossCheckError(
            f"exponent profile mismatch for {format_word(w)!r}: "
            f"sections gave {direct}, decomposition gave {derived}")
    if sum(n for n, _ in direct) % p != (group.lam * tb) % p:
        raise CrossCheckError("profile n-column does not sum to lambda * t")
    return ExponentProfile(p, tb, tuple(direct))


def classify_case(profile, lam):
    """Split a valid profile into the two-case dichotomy.

    Case 1 holds when some letter has n_u = 0 and m_u != 0 (that section is a
    pure b-power mod G'). Otherwise every letter with m_u != 0 has n_u != 0
    (the per-letter reading) and the verdict must exhibit at least two letters
    with n_u != lambda * m_u and at least two with m_u != 0; if either set of
    witnesses is short, something mathematically forced has failed.
    """
    p = profile.p
    lam %= p
    if lam == 0:
        raise InputError("the case split needs a non-torsion group (lambda != 0)")
    if profile.t % p == 0:
        raise InputError("the case split needs t != 0")
    for r in _letters_in_order(p):
        n_u, m_u = profile.pairs[r]
        if n_u == 0 and m_u != 0:
            return CaseVerdict(case=1, letter=p if r == 0 else r, j0=m_u)
    a_wit = [p if r == 0 else r
             for r in _letters_in_order(p)
             if profile.pairs[r][0] != (lam * profile.pairs[r][1]) % p]
    m_wit = [p if r == 0 else r for r in _letters_in_order(p) if profile.pairs[r][1] != 0]
    if len(a_wit) < 2 or len(m_wit) < 2:
        raise CrossCheckError(
            f"Case 2 witness shortfall: a-witnesses {a_wit}, m-witnesses {m_wit}")
    return CaseVerdict(case=2, a_witnesses=tuple(a_wit[:2]), m_witnesses=tuple(m_wit[:2]))


def check_derived_product(group, g):
    """For g in G', the product of all first-level sections lands back in G':
    its abelianization vanishes. g must be handed in as an honest member of G'
    (e.g. a product of conjugated commutators); the necessary condition
    abelianize(g) = (0, 0) is enforced."""
    if g.abelianize() != (0, 0):
        raise InputError("check_derived_product needs an element of the derived subgroup")
    prod = group.identity
    for u in range(1, group.p + 1):
        prod = prod * g.section(u)
    return prod.abelianize() == (0, 0)


def check_propagates(group, g, length_cap=None):
    """p-th power propagation: for g with abelianization (i, j), i != 0, in a
    non-torsion group, every first-level section of g^p is a^{lambda j} b^j
    mod G'. When length_cap is given and every length involved is certified
    within it, the section lengths of g^p are also checked against
    sum_k |g_k| <= |g| (sections g_k of a^{-i} g)."""
    p = group.p
    lam = group.lam
    if lam == 0:
        raise InputError("propagation needs a non-torsion group")
    i, j = g.abelianize()
    if i == 0:
        raise InputError("propagation needs abelianization (i, j) with i != 0")
    gp = g ** p
    expected = ((lam * j) % p, j % p)
    mismatches = []
    for u in range(1, p + 1):
        got = gp.section(u).abelianize()
        if got != expected:
            mismatches.append({"letter": u, "expected": list(expected), "got": list(got)})
    report = {
        "abelianizations_ok": not mismatches,
        "expected": list(expected),
        "mismatches": mismatches,
        "length_checked": False,
    }
    if length_cap is not None:
        h = (group.a ** (-i)) * g
        section_lengths = [h.section(u).length(length_cap) for u in range(1, p + 1)]
        g_len = g.length(length_cap)
        gp_lengths = [gp.section(u).length(length_cap) for u in range(1, p + 1)]
        if None not in section_lengths and g_len is not None and None not in gp_lengths:
            bound = sum(section_lengths)
            report["length_checked"] = True
            report["length_ok"] = bound <= g_len and all(l <= bound for l in gp_lengths)
            report["length_of_g"] = g_len
            report["section_length_sum"] = bound
            report["power_section_lengths"] = gp_lengths
        else:
            report["length_note"] = "lengths not certified within cap; inequality skipped"
    return report


def check_section_less_than_half(group, x, cap=6):
    """Short-section lemma: x = b^t mod G' (t != 0) of exact even length 2*mu
    and Case 2 profile has a section x_u with x_u != 1 and |x_u| < mu.

    Three-valued: returns status 'pass', 'fail', or 'skipped' (hypotheses not
    met or length not certified within cap)."""
    p = group.p
    ta, tb = x.abelianize()
    if ta != 0 or tb == 0:
        return {"status": "skipped", "reason": "needs x = b^t mod G' with t != 0"}
    if group.lam == 0:
        return {"status": "skipped", "reason": "needs a non-torsion group"}
    verdict = classify_case(exponent_profile(group, x), group.lam)
    if verdict.case != 2:
        return {"status": "skipped", "reason": "profile falls in Case 1"}
    # the handed-in normal form bounds the length, so never search past it
    lx = x.length(min(cap, x.word.syllables))
    if lx is None:
        return {"status": "skipped", "reason": f"length not certified within cap {cap}"}
    if lx % 2 or lx == 0:
        return {"status": "skipped", "reason": f"length {lx} is not of the form 2*mu, mu >= 1"}
    mu = lx // 2
    for u in range(1, p + 1):
        xs = x.section(u)
        if xs.is_trivial():
            continue
        short = xs.length(mu - 1)
        if short is not None:
            return {"status": "pass", "length": lx, "witness_letter": u,
                    "witness_length": short}
    return {"status": "fail", "length": lx,
            "detail": "no nontrivial section of length < mu found"}


def interval_lemma_scan(p):
    """Exhaustive scan of the interval criterion over F_p (needs p >= 5).

    For every step i != 0, interval count 1 < k < p-1 and pair i1 != i2:
    whenever exactly two v in F_p have |I_v intersect {i1, i2}| = 1, where
    I_v = {v - d*i : 0 <= d <= k-1}, check i2 = i1 +- i. Returns the list of
    violating quadruples (empty when the lemma holds)."""
    if p < 5:
        raise InputError("the interval criterion needs p >= 5 (so that 1 < k < p-1 is nonempty)")
    violations = []
    for i in range(1, p):
        for k in range(2, p - 1):
            offsets = [(-d * i) % p for d in range(k)]
            for i1 in range(p):
                for i2 in range(p):
                    if i1 == i2:
                        continue
                    boundary = [v for v in range(p)
                                if sum(1 for o in offsets if (v + o) % p in (i1, i2)) == 1]
                    if len(boundary) == 2 and i2 not in ((i1 + i) % p, (i1 - i) % p):
                        violations.append((i, k, i1, i2))
    return violations


def k_generator_identity(p):
    """For the constant-vector group with y_i = (b a^{-1})^{a^i}, verify

        psi([y_0, y_1]) = (1, ..., 1, y_2, (y_0^{-1} y_1^{-1})^a, y_1)

    coordinatewise with equal(). Returns True when every coordinate matches."""
    group = make_ggs(p, (1,) * (p - 1))
    a = group.a
    y = [(group.b * a.inverse()).conjugate(a ** i) for i in range(3)]
    comm = y[0].commutator(y[1])
    sections = comm.psi()
    expected = [group.identity] * (p - 3)
    expected += [y[2], (y[0].inverse() * y[1].inverse()).conjugate(a), y[1]]
    return all(s.equals(t) for s, t in zip(sections, expected))


def infinite_order_trace(group, g, steps=5):
    """Iterate g -> section(g^p, 1) and record abelianizations.

    Needs lambda != 0 and abelianization (i, j) with i, j both nonzero; then
    every entry after the first equals (lambda * j, j), the loop that forces
    infinite order. Returns the list of steps+1 abelianization pairs."""
    if group.lam == 0:
        raise InputError("the trace needs a non-torsion group")
    i, j = g.abelianize()
    if i == 0 or j == 0:
        raise InputError("the trace needs abelianization (i, j) with i, j != 0")
    if steps < 1:
        raise InputError("need at least one step")
    trace = [g.abelianize()]
    cur = g
    for _ in range(steps):
        cur = (cur ** group.p).section(1)
        trace.append(cur.abelianize())
    return trace


# random element generators -------------------------------------------------


def random_st1_element(group, rng, max_factors=SWEEP_MAX_FACTORS, nonzero_t=False):
    """A random element of st(1) as a product of <= max_factors conjugates
    (b^j)^(a^l). With nonzero_t, redraw until the b-exponent sum is nonzero."""
    p = group.p
    while True:
        toks = []
        for _ in range(rng.randint(1, max_factors)):
            j = rng.randrange(1, p)
            l = rng.randrange(p)
            toks += [("a", -l), ("b", j), ("a", l)]
        w = normalize(toks, p)
        if not nonzero_t or w.exponent_sums()[1] != 0:
            return group.element(w)


def random_derived_element(group, rng, max_factors=3, max_conj_syllables=3):
    """A random member of G': a product of commutators [a, b] conjugated by
    random words."""
    comm = group.a.commutator(group.b)
    out = group.identity
    for _ in range(rng.randint(1, max_factors)):
        h = group.element(random_word(group.p, max_conj_syllables, rng))
        out = out * comm.conjugate(h)
    return out


def _case2_candidate(group, rng):
    """Either a generic st(1) draw or the two-letter interleaved shape
    b^{i_1} (b^{j_1})^{a^v} ... that the short-section analysis centres on."""
    p = group.p
    if rng.random() < 0.5:
        return random_st1_element(group, rng, nonzero_t=True)
    v = rng.randrange(1, p)
    mu = rng.randint(1, 2)
    toks = []
    for _ in range(mu):
        toks += [("b", rng.randrange(1, p)), ("a", -v), ("b", rng.randrange(1, p)), ("a", v)]
    return group.element(normalize(toks, p))


# sweeps ---------------------------------------------------------------------


def _report(lemma, seed, cases_run=0, passed=0, skipped=0, counterexamples=None, **extra):
    rep = {
        "lemma": lemma,
        "seed": seed,
        "cases_run": cases_run,
        "passed": passed,
        "skipped": skipped,
        "counterexamples": counterexamples or [],
    }
    rep.update(extra)
    return rep


def sweep_commutator_tuple(group, seed=0):
    """psi([a, b]) against the closed form
    (b^{-1} a^{e_1}, a^{e_2 - e_1}, ..., a^{e_{p-1} - e_{p-2}}, a^{-e_{p-1}} b)."""
    p = group.p
    e = group.e
    sections = group.a.commutator(group.b).psi()
    expected = [group.element([("b", -1), ("a", e[0])])]
    expected += [group.element([("a", e[u - 1] - e[u - 2])]) for u in range(2, p)]
    expected.append(group.element([("a", -e[p - 2]), ("b", 1)]))
    bad = [{"letter": u + 1,
            "got": format_word(sections[u].word),
            "expected": format_word(expected[u].word)}
           for u in range(p) if not sections[u].equals(expected[u])]
    return _report("commutator-tuple", seed, cases_run=p, passed=p - len(bad),
                   counterexamples=bad)


def sweep_derived_product(group, cases, seed):
    rng = random.Random(seed)
    bad = []
    for idx in range(cases):
        g = random_derived_element(group, rng)
        if not check_derived_product(group, g):
            bad.append({"case": idx, "word": format_word(g.word)})
    return _report("derived-product", seed, cases_run=cases, passed=cases - len(bad),
                   counterexamples=bad)


def sweep_split_case(group, cases, seed):
    """Exponent-profile dichotomy on random st(1) elements with t != 0.

    Each case cross-checks the profile twice, classifies it, and re-verifies
    the witnesses the verdict names. Skipped entirely on torsion groups."""
    if group.lam == 0:
        return _report("split-case", seed, skipped=1,
                       note="case split undefined for torsion groups (lambda = 0)")
    rng = random.Random(seed)
    p = group.p
    bad = []
    for idx in range(cases):
        g = random_st1_element(group, rng, nonzero_t=True)
        try:
            profile = exponent_profile(group, g)
            verdict = classify_case(profile, group.lam)
        except CrossCheckError as exc:
            bad.append({"case": idx, "word": format_word(g.word), "error": str(exc)})
            continue
        ok = True
        if verdict.case == 1:
            r = verdict.letter % p
            ok = profile.pairs[r] == (0, verdict.j0) and verdict.j0 != 0
        else:
            for u in verdict.a_witnesses:
                n_u, m_u = profile.pairs[u % p]
                ok = ok and n_u != (group.lam * m_u) % p
            for v in verdict.m_witnesses:
                ok = ok and profile.pairs[v % p][1] != 0
            # per-letter reading: m_u != 0 forces n_u != 0 at every letter
            ok = ok and all(n != 0 for n, m in profile.pairs if m != 0)
        if not ok:
            bad.append({"case": idx, "word": format_word(g.word),
                        "verdict": verdict.case, "profile": list(profile.pairs)})
    return _report("split-case", seed, cases_run=cases, passed=cases - len(bad),
                   counterexamples=bad)


def sweep_propagation(group, cases, seed):
    if group.lam == 0:
        return _report("propagation", seed, skipped=1,
                       note="propagation needs a non-torsion group")
    rng = random.Random(seed)
    p = group.p
    bad = []
    for idx in range(cases):
        while True:
            w = random_word(p, 4, rng)
            if w.exponent_sums()[0] != 0:
                break
        g = group.element(w)
        rep = check_propagates(group, g)
        if not rep["abelianizations_ok"]:
            bad.append({"case": idx, "word": format_word(w), "mismatches": rep["mismatches"]})
    return _report("propagation", seed, cases_run=cases, passed=cases - len(bad),
                   counterexamples=bad)


def sweep_short_section(group, cases, seed, cap=6, max_attempts_factor=400):
    """Confirm the short-section conclusion on `cases` hypothesis-satisfying
    elements; draws that miss the hypotheses count as skipped."""
    if group.lam == 0:
        return _report("short-section", seed, skipped=1,
                       note="needs a non-torsion group")
    rng = random.Random(seed)
    confirmed = 0
    skipped = 0
    bad = []
    attempts = 0
    while confirmed + len(bad) < cases and attempts < cases * max_attempts_factor:
        attempts += 1
        x = _case2_candidate(group, rng)
        rep = check_section_less_than_half(group, x, cap)
        if rep["status"] == "skipped":
            skipped += 1
        elif rep["status"] == "pass":
            confirmed += 1
        else:
            bad.append({"word": format_word(x.word), "detail": rep})
    return _report("short-section", seed, cases_run=confirmed + len(bad),
                   passed=confirmed, skipped=skipped, counterexamples=bad)


def sweep_length_contraction(group, cases, seed, gen_factors=4, length_cap=4):
    """First-level contraction on random st(1) elements of certified length
    l <= 4: sum of section lengths <= l, each section <= (l+1)/2, and l > 1
    forces every section strictly shorter."""
    rng = random.Random(seed)
    p = group.p
    bad = []
    skipped = 0
    done = 0
    while done < cases:
        g = random_st1_element(group, rng, max_factors=gen_factors)
        l = g.length(length_cap)
        if l is None:
            skipped += 1
            continue
        done += 1
        sec_lengths = [g.section(u).length(length_cap) for u in range(1, p + 1)]
        entry = {"word": format_word(g.word), "length": l, "sections": sec_lengths}
        if None in sec_lengths:
            bad.append({**entry, "detail": "section length not certified within cap"})
            continue
        if sum(sec_lengths) > l:
            bad.append({**entry, "detail": "section lengths sum past |g|"})
        elif any(2 * s > l + 1 for s in sec_lengths):
            bad.append({**entry, "detail": "a section exceeds (|g|+1)/2"})
        elif l > 1 and any(s >= l for s in sec_lengths):
            bad.append({**entry, "detail": "no strict contraction despite |g| > 1"})
    return _report("length-contraction", seed, cases_run=done, passed=done - len(bad),
                   skipped=skipped, counterexamples=bad)


def sweep_circulant(p, seed, sample_cap=10000):
    """Circulant rank criterion: rank < p iff the entries sum to zero.
    Exhaustive when p^p is small, sampled otherwise."""
    rng = random.Random(seed)
    exhaustive = p ** p <= sample_cap
    if exhaustive:
        vectors = itertools.product(range(p), repeat=p)
        total = p ** p
    else:
        vectors = (tuple(rng.randrange(p) for _ in range(p)) for _ in range(sample_cap))
        total = sample_cap
    bad = []
    for m in vectors:
        rank = circulant_rank(m, p)
        if (rank < p) != (sum(m) % p == 0):
            bad.append({"vector": list(m), "rank": rank})
    return _report("circulant", seed, cases_run=total, passed=total - len(bad),
                   counterexamples=bad, exhaustive=exhaustive)


def sweep_interval(p, seed=0):
    if p < 5:
        return _report("interval-lemma", seed, skipped=1,
                       note="needs p >= 5; the inner interval range is empty below that")
    violations = interval_lemma_scan(p)
    total = (p - 1) * (p - 3) * p * (p - 1)  # (i, k, i1, i2) quadruples scanned
    return _report("interval-lemma", seed, cases_run=total, passed=total - len(violations),
                   counterexamples=[list(v) for v in violations])


def sweep_k_generator(group, seed=0):
    if group.family != FAMILY_CONSTANT:
        return _report("k-generator", seed, skipped=1,
                       note="identity specific to the constant-vector group")
    ok = k_generator_identity(group.p)
    return _report("k-generator", seed, cases_run=group.p, passed=group.p if ok else 0,
                   counterexamples=[] if ok else [{"detail": "coordinate mismatch"}])


def sweep_infinite_order(group, seed=0, steps=5):
    if group.lam == 0:
        return _report("infinite-order", seed, skipped=1,
                       note="trace needs a non-torsion group")
    g = group.a * group.b
    trace = infinite_order_trace(group, g, steps)
    expected = ((group.lam * 1) % group.p, 1)
    bad = [{"step": k + 1, "got": list(v)}
           for k, v in enumerate(trace[1:]) if v != expected]
    return _report("infinite-order", seed, cases_run=steps, passed=steps - len(bad),
                   counterexamples=bad, trace=[list(v) for v in trace])


def sweep_maximal_census(group, seed=0, n=2, leaf_guard=729):
    census = maximal_subgroups_census(group, n, leaf_guard)
    p = group.p
    bad = []
    if census["count"] != p + 1:
        bad.append({"detail": f"expected {p + 1} maximal subgroups, got {census['count']}"})
    for rec in census["maximal"]:
        if rec["index"] != p or not rec["normal"]:
            bad.append({"detail": "bad subgroup record", "record": rec})
    return _report("maximal-census", seed, cases_run=census["count"],
                   passed=census["count"] - len(bad), counterexamples=bad, census=census)


def sweep_constant_model(group, seed=0, census_order_cap=100):
    """Constant-group contrast checks on the semidirect-product model."""
    if group.family != FAMILY_CONSTANT:
        return _report("constant-model", seed, skipped=1,
                       note="model applies to the constant-vector group only")
    p = group.p
    bad = []
    cases = 0
    skipped = 0
    # matrix invariants are re-verified inside model_matrix
    _model.model_matrix(p)
    cases += 1
    for q1, q2 in ((2, 3), (2, 5)):
        cases += 1
        if not _model.distinct_mq_witness(q1, q2, p):
            bad.append({"detail": f"M_{q1} and M_{q2} not seen distinct"})
    finite_census = None
    model_order = p * 2 ** (p - 1)
    if model_order <= census_order_cap:
        cases += 1
        fm = _model.reduce_mod(p, 2)
        maximal = _model.enumerate_maximal_subgroups(fm)
        finite_census = _model.census_dict(fm, maximal)
        if not any(not rec["normal"] and rec["index"] != p for rec in finite_census["maximal"]):
            bad.append({"detail": "no non-normal maximal subgroup of index != p in the model"})
    else:
        skipped += 1
    rep = _report("constant-model", seed, cases_run=cases, passed=cases - len(bad),
                  skipped=skipped, counterexamples=bad)
    if finite_census is not None:
        rep["census"] = finite_census
    return rep

"""Independent oracles the test suite checks the package against.

Everything here is deliberately naive and cache-free: plain breadth-first
enumeration of leaf permutations and depth-bounded recursive action
comparison. Fixtures frozen in the tests were derived with these functions.
"""

import itertools


def leaf_action(group, w, n):
    """The permutation a word induces on level-n vertices, as a tuple of
    indices into the lexicographic vertex list."""
    leaves = list(itertools.product(range(1, group.p + 1), repeat=n))
    index = {v: i for i, v in enumerate(leaves)}
    return tuple(index[group.act_word(w, v)] for v in leaves)


def bfs_quotient_order(group, n, limit=200000):
    """Order of the level-n congruence quotient by breadth-first closure of
    {A, B} under composition, counting distinct leaf permutations."""
    gen_a = leaf_action(group, group.a.word, n)
    gen_b = leaf_action(group, group.b.word, n)
    ident = tuple(range(len(gen_a)))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in (gen_a, gen_b):
                h = tuple(s[i] for i in g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
                    if len(seen) > limit:
                        raise RuntimeError(f"BFS exceeded {limit} permutations")
        frontier = nxt
    return len(seen)


def agree_to_depth(group, w1, w2, depth):
    """Whether two words act identically on every vertex of the first `depth`
    levels. Recursive: images of the p letters must match, then all p section
    pairs must agree one level higher. Fresh memo per call, no shared state."""
    memo = {}

    def rec(u, v, d):
        if d == 0 or u == v:
            return True
        key = (u, v, d)
        hit = memo.get(key)
        if hit is not None:
            return hit
        out = True
        for x in range(1, group.p + 1):
            if group.act_word(u, (x,)) != group.act_word(v, (x,)):
                out = False
                break
        if out:
            for r in range(group.p):
                if not rec(group.section_word(u, r), group.section_word(v, r), d - 1):
                    out = False
                    break
        memo[key] = out
        return out

    return rec(w1, w2, depth)

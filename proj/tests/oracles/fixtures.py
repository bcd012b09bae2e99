#!/usr/bin/env python3
"""Independent brute-force oracles used to freeze test fixtures.

Everything here is deliberately naive: explicit tuples for elements, subset
enumeration for subsequence sums, and closure by repeated addition for
subgroups. None of it shares code with the C++ library.
"""
import itertools
import sys


def elements(factors):
    return list(itertools.product(*[range(n) for n in factors]))


def add(factors, a, b):
    return tuple((x + y) % n for x, y, n in zip(a, b, factors))


def closure(factors, gens):
    zero = tuple(0 for _ in factors)
    out = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = add(factors, x, g)
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(out)


def subgroups(factors):
    els = elements(factors)
    found = set()
    for a in els:
        for b in els:
            found.add(closure(factors, [a, b]))
    return found


def subset_sums(factors, terms):
    # sums of nonempty subsequences, grown one term at a time
    sums = set()
    for t in terms:
        sums = sums | {add(factors, s, t) for s in sums} | {t}
    return sums


def is_regular(factors, terms, subs):
    order = 1
    for n in factors:
        order *= n
    for h in subs:
        if len(h) == order:
            continue
        if sum(1 for t in terms if t in h) > len(h) - 1:
            return False
    return True


def multisets(els, length):
    return itertools.combinations_with_replacement(els, length)


def longest_regular_nonbasis(factors, max_len):
    subs = subgroups(factors)
    els = [e for e in elements(factors) if any(e)]
    order = len(els) + 1
    best = 0
    for length in range(1, max_len + 1):
        any_found = False
        for ms in multisets(els, length):
            if not is_regular(factors, ms, subs):
                continue
            if len(subset_sums(factors, ms)) < order:
                any_found = True
                break
        if not any_found:
            # dropping a term keeps a sequence regular and a non-basis
            break
        best = length
    return best


def rank2_count(p):
    factors = (p, p)
    subs = subgroups(factors)
    els = [e for e in elements(factors) if any(e)]
    total = 0
    bad = 0
    for ms in multisets(els, 2 * p - 2):
        if not is_regular(factors, ms, subs):
            continue
        total += 1
        if len(subset_sums(factors, ms) | {(0, 0)}) < p * p - 1:
            bad += 1
    return total, bad


def cyclic_nonbasis(n):
    factors = (n,)
    subs = subgroups(factors)
    els = [e for e in elements(factors) if any(e)]
    out = []
    for ms in multisets(els, n - 1):
        if not is_regular(factors, ms, subs):
            continue
        if len(subset_sums(factors, ms)) < n:
            out.append([t[0] for t in ms])
    return out


def cover_bruteforce(factors, terms):
    E = max(factors)
    chars = elements(factors)

    def pairing(g, chi):
        return sum((E // n) * a * b for a, b, n in zip(g, chi, factors)) % E

    for assign in itertools.product(list(range(E)) + [None], repeat=len(terms)):
        ok = all(any(k is not None and pairing(g, chi) == k for g, k in zip(terms, assign)) for chi in chars)
        if ok:
            return True
    return False


def max_regular_length(factors):
    subs = subgroups(factors)
    els = [e for e in elements(factors) if any(e)]
    length = 0
    while True:
        if not any(is_regular(factors, ms, subs) for ms in multisets(els, length + 1)):
            return length
        length += 1


if __name__ == "__main__":
    print("subgroups C3+C3:", len(subgroups((3, 3))), flush=True)
    print("subgroups C3+C15:", len(subgroups((3, 15))), flush=True)
    for p in (2, 3, 5):
        print(f"subgroups C{p}+C{p}:", len(subgroups((p, p))), flush=True)
    for n in range(2, 11):
        print(f"longest regular non-basis C{n}:", longest_regular_nonbasis((n,), 2 * n), flush=True)
    print("longest regular non-basis C2+C2:", longest_regular_nonbasis((2, 2), 8), flush=True)
    print("longest regular non-basis C3+C3:", longest_regular_nonbasis((3, 3), 9), flush=True)
    print("rank2 p=2 (checked, bad):", rank2_count(2), flush=True)
    print("rank2 p=3 (checked, bad):", rank2_count(3), flush=True)
    for n in (2, 5, 6):
        print(f"cyclic non-basis regular length n-1, n={n}:", cyclic_nonbasis(n), flush=True)
    print("cover (1,0)^2(0,1)^2 over C3+C3:", cover_bruteforce((3, 3), [(1, 0), (1, 0), (0, 1), (0, 1)]), flush=True)
    print("max regular length C3+C3:", max_regular_length((3, 3)), flush=True)

"""Brute-force reference implementations.

Deliberately naive: full joint tables, pairwise comparisons through the
carrier's own ``leq``, no ranks, no kernels, no locality shortcut.
"""
import itertools


def preference(p, s):
    env = dict(zip(p.names, s))
    acc = p.semiring.one
    for c in p.constraints:
        acc = p.semiring.times(acc, c.table[tuple(env[n] for n in c.scope)])
    return acc


def optimal(p):
    sols = list(itertools.product(*(v.domain for v in p.variables)))
    prefs = {s: preference(p, s) for s in sols}
    lt = p.semiring.lt
    return [s for s in sols if not any(lt(prefs[s], prefs[t]) for t in sols)]


def full_payoffs(g):
    """player -> {joint strategy: payoff}, expanded over every joint strategy."""
    joints = list(itertools.product(*(p.strategies for p in g.players)))
    out = {}
    for name in g.names:
        scope = g.local_scope(name)
        pos = [g.names.index(n) for n in scope]
        out[name] = {s: g.payoffs[name][tuple(s[k] for k in pos)] for s in joints}
    return joints, out


def nash(g):
    joints, pay = full_payoffs(g)
    result = []
    for s in joints:
        stable = True
        for k, name in enumerate(g.names):
            for alt in g.players[k].strategies:
                t = s[:k] + (alt,) + s[k + 1:]
                if g.carrier.lt(pay[name][s], pay[name][t]):
                    stable = False
        if stable:
            result.append(s)
    return result


def dominates(g, pay, t, s):
    leq = g.carrier.leq
    vs = [pay[n][s] for n in g.names]
    vt = [pay[n][t] for n in g.names]
    return all(leq(a, b) for a, b in zip(vs, vt)) and any(not leq(b, a) for a, b in zip(vs, vt))


def pareto(g, among=None):
    joints, pay = full_payoffs(g)
    pool = joints if among is None else among
    return [s for s in pool if not any(dominates(g, pay, t, s) for t in pool)]


def pareto_nash(g):
    return pareto(g, nash(g))

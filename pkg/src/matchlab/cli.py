"""Command-line interface: ``matchlab <area> <command> [options]``.

Output is compact JSON on stdout (``--format tsv`` gives key/value rows).
Exit codes: 0 computed, 1 the checked property fails or a claimed
construction broke, 2 malformed input or a cap was hit.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import sys
import time

from . import (abelian, acyclic, config, gfield, linmatch, matchcount, permrank,
               rectify)
from .errors import CapExceeded, ClaimFailed, InputError, MatchlabError, SoundnessError

PROG = "matchlab"


class _Fail(Exception):
    """Carries a computed result whose checked property is false (exit 1)."""

    def __init__(self, payload):
        super().__init__("property fails")
        self.payload = payload


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


# -- input parsing -------------------------------------------------------------

def _load(text):
    """JSON from a literal or from ``@path``."""
    if isinstance(text, str) and text.startswith("@"):
        with open(text[1:]) as fh:
            return json.load(fh)
    return json.loads(text)


def parse_group(text) -> abelian.GroupSpec:
    """"7", "2,4" or {"orders": [...]}."""
    text = text.strip()
    if text.startswith("{") or text.startswith("@"):
        return abelian.GroupSpec.from_json(_load(text))
    try:
        return abelian.GroupSpec(tuple(int(x) for x in text.split(",")))
    except ValueError:
        raise InputError(f"cannot parse group {text!r}") from None


def parse_subset(G, text) -> abelian.GSubset:
    """"1,2,4" (cyclic groups) or [[0,1],[1,1]]; "" is the empty set."""
    text = text.strip()
    if text.startswith("[") or text.startswith("@"):
        data = _load(text)
        return abelian.GSubset(G, [tuple(x) if isinstance(x, list) else x for x in data])
    if not text:
        return abelian.GSubset(G, [])
    try:
        return abelian.GSubset(G, [int(x) for x in text.split(",")])
    except ValueError:
        raise InputError(f"cannot parse subset {text!r}") from None


def parse_ints(text):
    text = text.strip()
    if text.startswith("["):
        return [int(x) for x in json.loads(text)]
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"cannot parse integer list {text!r}") from None


def parse_tower(args) -> gfield.FieldTower:
    if getattr(args, "field", None):
        spec = _load(args.field)
        p, m, n = spec["p"], spec.get("m", 1), spec["n"]
    else:
        if args.p is None or args.n is None:
            raise InputError("give --field or --p/--n (and optionally --m)")
        p, m, n = args.p, args.m, args.n
    tower = gfield.make_tower(int(p), int(m), int(n))
    if getattr(args, "field", None) and "defining_poly" in spec:
        if list(spec["defining_poly"]) != tower.defining_poly:
            raise InputError("defining_poly differs from the canonical one")
    return tower


def parse_subspace(t, text) -> gfield.Subspace:
    """[[c_0..c_{n-1}], ...] coordinate vectors over F, or {"elements": [...]}."""
    data = _load(text)
    if isinstance(data, dict):
        return gfield.span(t, [int(x) for x in data["elements"]])
    rows = []
    for v in data:
        if len(v) != t.n or any(not t.in_F(int(c)) for c in v):
            raise InputError(f"coordinate vector {v} is not in F^{t.n}")
        rows.append(tuple(int(c) for c in v))
    return gfield.Subspace(t, tuple(rows))


def _perm_or_none(f):
    return None if f is None else list(f.perm)


def _ints(S):
    return S.as_ints() if S.group.rank == 1 else S.to_json()


# -- handlers ------------------------------------------------------------------

def _pair(args):
    G = parse_group(args.group)
    return parse_subset(G, args.a), parse_subset(G, args.b)


def cmd_match_build(args):
    A, B = _pair(args)
    return matchcount.build_bigraph(A, B).to_json()


def cmd_match_find(args):
    A, B = _pair(args)
    f = matchcount.find_perfect_matching(matchcount.build_bigraph(A, B))
    return {"matching": _perm_or_none(f)}


def cmd_match_count(args):
    A, B = _pair(args)
    return {"count": str(matchcount.permanent(matchcount.build_bigraph(A, B)))}


def cmd_match_enumerate(args):
    A, B = _pair(args)
    ms = matchcount.enumerate_matchings(matchcount.build_bigraph(A, B), limit=args.limit)
    return {"matchings": [list(f.perm) for f in ms], "truncated": ms.truncated}


def cmd_match_bounds(args):
    A, B = _pair(args)
    M = matchcount.build_bigraph(A, B)
    out = matchcount.bounds(M).to_json()
    if args.exact:
        out["permanent"] = str(matchcount.permanent(M))
    return out


def cmd_acyclic_check(args):
    A, B = _pair(args)
    f = matchcount.MatchingFn(tuple(parse_ints(args.f)))
    res = acyclic.is_acyclic(A, B, f)
    out = {"acyclic": res.acyclic, "witness": _perm_or_none(res.witness),
           "multiplicity": acyclic.multiplicity(A, B, f).to_json()}
    if not res.acyclic:
        raise _Fail(out)
    return out


def cmd_acyclic_find(args):
    A, B = _pair(args)
    return {"acyclic_matching": _perm_or_none(acyclic.find_acyclic_matching(A, B))}


def cmd_acyclic_jafari(args):
    A = acyclic.jafari_set(args.p)
    return {"set": A.as_ints(), "acyclic_matching": _perm_or_none(acyclic.find_acyclic_matching(A, A))}


def cmd_acyclic_identity(args):
    G = abelian.cyclic(args.p)
    rep = acyclic.identity_acyclic(parse_subset(G, args.a))
    out = rep.to_json()
    if rep.verified is False:
        raise _Fail(out)
    return out


def cmd_acyclic_weak_sweep(args):
    fh = open(args.jsonl, "w") if args.jsonl else None
    try:
        rep = acyclic.weak_acyclic_property(args.n, args.k, sidon_only=args.sidon_only,
                                            budget=args.budget, jsonl=fh, jobs=args.jobs)
    finally:
        if fh:
            fh.close()
    out = rep.to_json()
    if not rep.holds:
        raise _Fail(out)
    return out


def cmd_acyclic_sidon(args):
    A, B = _pair(args)
    return {"acyclic_matching": list(acyclic.sidon_acyclic_search(A, B).perm)}


def cmd_acyclic_geometric(args):
    A, B = acyclic.geometric_example(args.n, args.k, args.a0)
    return {"A": A.as_ints(), "B": B.as_ints(),
            "acyclic_matching": list(acyclic.sidon_acyclic_search(A, B).perm)}


def cmd_acyclic_closed_form(args):
    G = parse_group(args.group)
    g1 = _elem(G, args.g1)
    if args.g2 is None:
        A, B, f = acyclic.max_size_matchings(G, g1)
        return {"A": _ints(A), "B": _ints(B), "matching": list(f.perm)}
    if args.g3 is None:
        raise InputError("--g3 is required with --g2")
    ms = acyclic.two_deficient_matchings(G, g1, _elem(G, args.g2), _elem(G, args.g3))
    out = {"count": str(len(ms)), "matchings": []}
    for m in ms:
        out["matchings"].append({"l": m.l, "matching": list(m.f.perm)})
        if not acyclic.is_acyclic(m.A, m.B, m.f).acyclic:
            raise SoundnessError(f"closed-form matching with l={m.l} is not acyclic")
    if ms:
        out["A"], out["B"] = _ints(ms[0].A), _ints(ms[0].B)
    return out


def _elem(G, text):
    vals = parse_ints(text)
    return vals[0] if len(vals) == 1 and G.rank == 1 else tuple(vals)


def cmd_permrank_check(args):
    rep = permrank.nullity_property_check(args.k, args.p, trials=args.trials,
                                          exhaustive=args.exhaustive, seed=args.seed)
    out = rep.to_json()
    if not rep.holds:
        raise _Fail(out)
    return out


def cmd_permrank_tcoeff(args):
    alpha, beta = parse_ints(args.alpha), parse_ints(args.beta)
    M = permrank.theorem_matrix(alpha, beta)
    out = {"t_coefficient": str(permrank.t_coefficient(M)),
           "rank_rational": permrank.rank_rational(M),
           "orbits": permrank.orbit_count(alpha, beta)}
    if args.p is not None:
        out["rank_mod_p"] = permrank.rank_mod_p(M, args.p)
    return out


def cmd_rectify_embed(args):
    X = parse_subset(abelian.cyclic(args.p), args.x)
    phi = rectify.find_embedding(X)
    return {"embedding": None if phi is None else phi.to_json()}


def cmd_rectify_match(args):
    G = abelian.cyclic(args.p)
    A, B = parse_subset(G, args.a), parse_subset(G, args.b)
    phi = rectify.find_embedding(rectify.rectification_domain(A, B))
    if phi is None:
        return {"lambda": None, "matching": None}
    f = rectify.greedy_acyclic(A, B, phi)
    return {"lambda": phi.dilation, "matching": list(f.perm)}


def cmd_gfield_tower(args):
    t = parse_tower(args)
    out = t.to_json()
    out["F"] = t.F if t.q <= 64 else None
    out["basis"] = t.basis
    return out


def cmd_gfield_subfields(args):
    t = parse_tower(args)
    return {"subfields": {str(d): E.to_json() for d, E in gfield.subfield_lattice(t).items()}}


def cmd_gfield_primitive(args):
    t = parse_tower(args)
    if args.subspace:
        W = parse_subspace(t, args.subspace)
        ok = gfield.is_primitive_subspace(t, W)
        out = {"primitive": ok, "dim": W.dim}
        if not ok:
            raise _Fail(out)
        return out
    rep = gfield.max_primitive_subspace(t, method=args.method)
    return rep.to_json()


def cmd_gfield_normal_basis(args):
    t = parse_tower(args)
    theta = gfield.normal_basis_element(t)
    return {"theta": theta, "orbit": [t.sigma(theta, j) for j in range(t.n)]}


def cmd_gfield_complement(args):
    t = parse_tower(args)
    V = parse_subspace(t, args.v) if args.v else gfield.whole_space(t)
    fam = [parse_subspace(t, json.dumps(s)) for s in _load(args.family)]
    W = gfield.complement_subspace(V, fam)
    return {"dim": W.dim, "basis": W.to_json(), "elements": W.basis_elements()}


def cmd_gfield_T(args):
    return gfield.build_T_complement(args.n).to_json()


def _spaces(args):
    t = parse_tower(args)
    return t, parse_subspace(t, args.a), parse_subspace(t, args.b)


def cmd_linmatch_criterion(args):
    t, A, B = _spaces(args)
    basis = parse_ints(args.basis) if args.basis else A.basis_elements()
    rep = linmatch.dimension_criterion(A, basis, B)
    out = rep.to_json()
    if not rep.passes:
        raise _Fail(out)
    return out


def cmd_linmatch_strong(args):
    t, A, B = _spaces(args)
    w = linmatch.product_in_A(A, B) if A.dim else None
    return {"strong_matching_exists": w is None, "witness": None if w is None else list(w)}


def cmd_linmatch_equiv(args):
    t, A, B = _spaces(args)
    f = linmatch.LinearIso(A, B, parse_ints(args.f))
    g = linmatch.LinearIso(A, B, parse_ints(args.g))
    phi = linmatch.LinearIso(A, A, parse_ints(args.phi))
    out = {"equivalent": linmatch.equivalence_check(f, g, phi),
           "scalar_multiple": linmatch.is_scalar_multiple(f, g)}
    if not out["equivalent"]:
        raise _Fail(out)
    return out


def cmd_linmatch_acyclic(args):
    t, A, B = _spaces(args)
    f = linmatch.LinearIso(A, B, parse_ints(args.f))
    rep = linmatch.linear_acyclic_check(f)
    out = rep.to_json()
    if rep.witness:
        out["branch"] = linmatch.classify_equivalence(f, *rep.witness)
        raise _Fail(out)
    return out


def cmd_linmatch_prop38(args):
    t = parse_tower(args)
    return linmatch.prop38_counterexample(t, alpha=args.alpha, beta=args.beta).to_json()


def cmd_linmatch_property(args):
    t = parse_tower(args)
    out = {"n": t.n, "has_property": linmatch.has_linear_acyclic_property(t, "theorem")}
    if args.method == "sweep":
        sw = linmatch.linear_acyclic_property_sweep(t)
        out["sweep"] = sw.to_json()
        if sw.holds != out["has_property"]:
            raise _Fail(out)
    elif args.method == "certificate" and not out["has_property"]:
        try:
            out["certificate"] = linmatch.non_acyclic_certificate(t).to_json()
        except ClaimFailed as e:
            out["certificate"] = None
            out["certificate_error"] = str(e)
            raise _Fail(out)
    return out


# -- parser --------------------------------------------------------------------

def _common():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("output and limits")
    g.add_argument("--format", choices=("json", "tsv"), default=argparse.SUPPRESS)
    g.add_argument("--record", metavar="FILE", default=argparse.SUPPRESS,
                   help="append a JSONL run record")
    g.add_argument("--cap-enum", type=int, default=argparse.SUPPRESS)
    g.add_argument("--cap-perm", type=int, default=argparse.SUPPRESS)
    g.add_argument("--cap-field", type=int, default=argparse.SUPPRESS)
    g.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    return p


def build_parser():
    common = _common()
    parser = _Parser(prog=PROG, description="Matchings in abelian groups and field extensions.",
                     parents=[common])
    areas = parser.add_subparsers(dest="area", required=True, parser_class=_Parser)

    def leaf(sub, name, fn, help=None):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(fn=fn)
        return p

    def pair(p):
        p.add_argument("--group", required=True, help='"7", "2,4" or {"orders": [...]}')
        p.add_argument("--a", required=True)
        p.add_argument("--b", required=True)

    def tower(p):
        p.add_argument("--field", help='{"p":..,"m":..,"n":..}')
        p.add_argument("--p", type=int)
        p.add_argument("--m", type=int, default=1)
        p.add_argument("--n", type=int)

    m = areas.add_parser("match", help="bipartite graphs and permanents").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    for name, fn in (("build", cmd_match_build), ("find", cmd_match_find),
                     ("count", cmd_match_count), ("enumerate", cmd_match_enumerate),
                     ("bounds", cmd_match_bounds)):
        p = leaf(m, name, fn)
        pair(p)
        if name == "enumerate":
            p.add_argument("--limit", type=int)
        if name == "bounds":
            p.add_argument("--exact", action="store_true", help="also compute the permanent")

    a = areas.add_parser("acyclic", help="acyclic matchings").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    p = leaf(a, "check", cmd_acyclic_check)
    pair(p)
    p.add_argument("--f", required=True, help="permutation: f(a_i) = b_{f[i]}")
    pair(leaf(a, "find", cmd_acyclic_find))
    leaf(a, "jafari", cmd_acyclic_jafari).add_argument("--p", type=int, required=True)
    p = leaf(a, "identity", cmd_acyclic_identity)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--a", required=True)
    p = leaf(a, "weak-sweep", cmd_acyclic_weak_sweep)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--sidon-only", action="store_true")
    p.add_argument("--budget", type=int)
    p.add_argument("--jsonl", help="write one record per pair")
    pair(leaf(a, "sidon", cmd_acyclic_sidon))
    p = leaf(a, "geometric", cmd_acyclic_geometric)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--a0", type=int, default=0)
    p = leaf(a, "closed-form", cmd_acyclic_closed_form)
    p.add_argument("--group", required=True)
    p.add_argument("--g1", required=True)
    p.add_argument("--g2")
    p.add_argument("--g3")

    r = areas.add_parser("permrank", help="the matrix 2I - P_alpha - P_beta").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    p = leaf(r, "check", cmd_permrank_check)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exhaustive", action=argparse.BooleanOptionalAction, default=None)
    p = leaf(r, "tcoeff", cmd_permrank_tcoeff)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--p", type=int)

    x = areas.add_parser("rectify", help="rectification in Z/p").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    p = leaf(x, "embed", cmd_rectify_embed)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--x", required=True)
    p = leaf(x, "match", cmd_rectify_match)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)

    g = areas.add_parser("gfield", help="finite field towers").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    tower(leaf(g, "tower", cmd_gfield_tower))
    tower(leaf(g, "subfields", cmd_gfield_subfields))
    p = leaf(g, "primitive", cmd_gfield_primitive)
    tower(p)
    p.add_argument("--method", choices=("normal", "greedy"), default="normal")
    p.add_argument("--subspace", help="check this subspace instead of constructing one")
    tower(leaf(g, "normal-basis", cmd_gfield_normal_basis))
    p = leaf(g, "complement", cmd_gfield_complement)
    tower(p)
    p.add_argument("--v", help="ambient subspace (default: all of L)")
    p.add_argument("--family", required=True, help="JSON list of subspaces")
    leaf(g, "T", cmd_gfield_T).add_argument("--n", type=int, required=True)

    lm = areas.add_parser("linmatch", help="linear matchings").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    for name, fn in (("criterion", cmd_linmatch_criterion), ("strong", cmd_linmatch_strong),
                     ("equiv", cmd_linmatch_equiv), ("acyclic", cmd_linmatch_acyclic)):
        p = leaf(lm, name, fn)
        tower(p)
        p.add_argument("--a", required=True, help="subspace A")
        p.add_argument("--b", required=True, help="subspace B")
        if name == "criterion":
            p.add_argument("--basis", help="ordered basis of A as field elements")
        if name in ("equiv", "acyclic"):
            p.add_argument("--f", required=True, help="images of A's echelon basis")
        if name == "equiv":
            p.add_argument("--g", required=True)
            p.add_argument("--phi", required=True)
    p = leaf(lm, "prop38", cmd_linmatch_prop38)
    tower(p)
    p.add_argument("--alpha", type=int)
    p.add_argument("--beta", type=int)
    p = leaf(lm, "property", cmd_linmatch_property)
    tower(p)
    p.add_argument("--method", choices=("theorem", "sweep", "certificate"), default="theorem")
    return parser


# -- output --------------------------------------------------------------------

def _canonical(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def render(obj, fmt):
    if fmt == "tsv":
        if not isinstance(obj, dict):
            obj = {"result": obj}
        lines = []
        for k, v in obj.items():
            cell = v if isinstance(v, str) else json.dumps(v, separators=(",", ":"))
            lines.append(f"{k}\t{cell}")
        return "\n".join(lines)
    return json.dumps(obj, separators=(",", ":"))


def _record(path, argv, args, output, code, wall, caps):
    inputs = {k: v for k, v in sorted(vars(args).items()) if k not in ("fn", "record")}
    rec = {
        "command": [PROG] + list(argv),
        "config": caps,
        "input_digest": hashlib.sha256(_canonical(inputs).encode()).hexdigest(),
        "output": output,
        "exit_code": code,
        "wall_time": round(wall, 6),
        "caps": caps,
        "verified": code == 0,
    }
    with open(path, "a") as fh:
        fh.write(_canonical(rec) + "\n")


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    with config.override():  # MATCHLAB_CONFIG applies to this run only
        return _main(argv)


def _main(argv):
    fmt = "json"
    args = None
    t0 = time.perf_counter()
    try:
        config.load()
        args = build_parser().parse_args(argv)
        fmt = getattr(args, "format", "json")
        with config.override(enum=getattr(args, "cap_enum", None),
                             perm=getattr(args, "cap_perm", None),
                             field=getattr(args, "cap_field", None)) as caps:
            caps = dataclasses.asdict(caps)
            args.jobs = getattr(args, "jobs", 1)
            try:
                out, code = args.fn(args), 0
            except _Fail as e:
                out, code = e.payload, 1
    except (ClaimFailed, SoundnessError) as e:
        out, code = {"error": {"type": type(e).__name__, "message": str(e)}}, 1
        caps = dataclasses.asdict(config.CAPS)
    except (InputError, CapExceeded, KeyError, ValueError, TypeError, OSError,
            json.JSONDecodeError, MatchlabError) as e:
        out, code = {"error": {"type": type(e).__name__, "message": str(e)}}, 2
        caps = dataclasses.asdict(config.CAPS)
    print(render(out, fmt))
    rec = getattr(args, "record", None) if args is not None else None
    if rec:
        _record(rec, argv, args, out, code, time.perf_counter() - t0, caps)
    return code


if __name__ == "__main__":
    sys.exit(main())

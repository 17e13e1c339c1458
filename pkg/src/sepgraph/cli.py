"""Command-line entry point: ``sepgraph <command> [options]``.

Every command writes one JSON document (CSV for ``experiment``) to ``--out``
or stdout.  Exit status: 0 success, 1 invalid input, 2 computation error.
"""
import argparse
import json
import math
import sys

import numpy as np

from . import discretize as disc
from .errors import ComputationError, SepGraphError, ValidationError
from .graph import graph_to_dict, ids, load_graph
from .mincut import min_vertex_cut, pencil_from_flow
from .modulus import modulus_p, pencil_from_duals
from .separation import disc_sr, fibrate, is_slim, position_field, slimify
from .verify import run_verify

COMMANDS = ("analyze", "mincut", "fibrate", "slim", "modulus", "pencil", "discretize", "experiment", "verify")
DEFAULT_SEED = 42

SCHEMA = {
    "graph": {"vertices": [{"id": "<string>", "mu": "<positive float>"}], "edges": [["<id>", "<id>"]]},
    "analyze": {"width": "<int|'inf'>", "mass": "<float>", "sr": "<float|'inf'|0>",
                "levels": [["<id>"]], "chosen": "<int|null>"},
    "mincut": {"cut_value": "<float>", "cut": ["<id>"], "pencil": [{"path": ["<id>"], "alpha": "<float>"}],
               "C": "<float|null>"},
    "modulus": {"p": "<float>", "modulus": "<float>", "gap": "<float>", "rho": {"<id>": "<float>"},
                "active_paths": [["<id>"]], "cut_value": "<float>"},
    "cloud_csv": "rows x1,...,xd,mass (optional header); or square distance CSV plus --masses CSV",
    "experiment_csv": "'# <json metadata>' line, then columns r,width,sr_over_r,cut_over_r",
    "set": "graphs: comma-separated ids; clouds: box:lo1,hi1,...,lod,hid or halfplane:a1,...,ad,c (a.x <= c)",
    "error": {"error": {"type": "<exception class>", "message": "<text>"}},
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(1)


def _num(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return x


def _parser():
    ap = _Parser(prog="sepgraph", description="Separating sets, cuts and moduli on measure graphs.")
    ap.add_argument("command", nargs="?", choices=COMMANDS)
    ap.add_argument("--graph")
    ap.add_argument("--cloud")
    ap.add_argument("--masses", help="masses CSV for a distance-matrix cloud")
    ap.add_argument("--v")
    ap.add_argument("--w")
    ap.add_argument("--set", dest="set_spec")
    ap.add_argument("--p", type=float, default=1.0)
    ap.add_argument("--L", type=float)
    ap.add_argument("--r", help="scale, or comma-separated decreasing schedule")
    ap.add_argument("--tol", type=float, default=1e-6)
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--max-vertices", type=int, default=7)
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--reference", help="JSON object of continuous reference values")
    ap.add_argument("--out")
    ap.add_argument("--schema", action="store_true", help="print all I/O formats and exit")
    return ap


_REQUIRED = {
    "analyze": ("graph", "v", "w", "set_spec"),
    "mincut": ("graph", "v", "w"),
    "fibrate": ("graph", "v", "w", "set_spec"),
    "slim": ("graph", "v", "w", "set_spec"),
    "modulus": ("graph", "v", "w"),
    "pencil": ("graph", "v", "w"),
    "discretize": ("cloud", "r"),
    "experiment": ("cloud", "v", "w", "set_spec", "r"),
    "verify": (),
}


def _validate(args):
    if args.command is None:
        raise ValidationError("a command is required (or --schema)")
    missing = [f"--{name.replace('_spec', '')}" for name in _REQUIRED[args.command] if getattr(args, name) is None]
    if missing:
        raise ValidationError(f"{args.command} requires {', '.join(missing)}")
    if args.p < 1:
        raise ValidationError("--p must be >= 1")


def _vertex(g, token):
    for i, lab in enumerate(g.labels):
        if str(lab) == token:
            return i
    raise ValidationError(f"unknown vertex id {token!r}")


def _graph_set(g, spec):
    tokens = [s for s in spec.split(",") if s.strip()]
    return g.mask([_vertex(g, s.strip()) for s in tokens])


def _floats(text):
    try:
        return [float(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise ValidationError(f"expected comma-separated numbers, got {text!r}") from None


def _cloud_set(cloud, spec):
    kind, _, body = spec.partition(":")
    vals = _floats(body)
    if not cloud.euclidean:
        raise ValidationError("geometric sets need a coordinate cloud")
    P = cloud.points
    d = P.shape[1]
    if kind == "box" and len(vals) == 2 * d:
        lo, hi = np.asarray(vals[0::2]), np.asarray(vals[1::2])
        return np.all((P >= lo) & (P <= hi), axis=1)
    if kind == "halfplane" and len(vals) == d + 1:
        return P @ np.asarray(vals[:d]) <= vals[d]
    raise ValidationError(f"bad set predicate {spec!r}")


def _cloud_point(cloud, token):
    if token.startswith("idx:"):
        i = int(token[4:])
        if not 0 <= i < cloud.n:
            raise ValidationError(f"cloud index {i} out of range")
        return i
    if not cloud.euclidean:
        raise ValidationError("distance-matrix clouds take terminals as idx:N")
    xy = np.asarray(_floats(token))
    if xy.shape[0] != cloud.points.shape[1]:
        raise ValidationError(f"terminal {token!r} has wrong dimension")
    return int(np.argmin(((cloud.points - xy) ** 2).sum(axis=1)))


def _load_cloud(args):
    if args.masses:
        return disc.load_distance_csv(args.cloud, args.masses)
    return disc.load_cloud_csv(args.cloud)


def _fibration_fields(g, t, A):
    pf = position_field(g, t, A)
    if pf.connected and pf.width >= 1:
        fib = fibrate(g, t, A)
        return [ids(g, L) for L in fib.levels], fib.chosen
    return [], None


def _analyze(args):
    g = load_graph(args.graph)
    t = (_vertex(g, args.v), _vertex(g, args.w))
    A = _graph_set(g, args.set_spec)
    ratio = disc_sr(g, t, A)
    levels, chosen = _fibration_fields(g, t, A)
    return {"width": _num(ratio.width), "mass": ratio.mass, "sr": _num(ratio.value),
            "levels": levels, "chosen": chosen}


def _fibrate(args):
    g = load_graph(args.graph)
    t = (_vertex(g, args.v), _vertex(g, args.w))
    A = _graph_set(g, args.set_spec)
    fib = fibrate(g, t, A)
    ratio = disc_sr(g, t, A)
    return {"width": fib.width, "mass": fib.mass, "sr": _num(ratio.value),
            "levels": [ids(g, L) for L in fib.levels], "chosen": fib.chosen}


def _slim(args):
    g = load_graph(args.graph)
    t = (_vertex(g, args.v), _vertex(g, args.w))
    A = _graph_set(g, args.set_spec)
    check = is_slim(g, t, A)
    slim = slimify(g, t, A)
    return {"slim": check.slim, "witness": None if check.witness is None else g.labels[check.witness],
            "slimified": ids(g, slim), "slimified_mass": g.mass(slim), "mass": g.mass(A)}


def _pencil_json(g, pencil):
    return [{"path": [g.labels[z] for z in c], "alpha": float(a)} for c, a in zip(pencil.paths, pencil.alpha)]


def _mincut(args):
    g = load_graph(args.graph)
    t = (_vertex(g, args.v), _vertex(g, args.w))
    cut = min_vertex_cut(g, t)
    out = {"cut_value": cut.value, "flow_value": cut.flow_value, "cut": ids(g, cut.cut), "pencil": [], "C": None}
    if cut.flow_value > 0:
        pencil = pencil_from_flow(g, t)
        out["pencil"] = _pencil_json(g, pencil)
        out["C"] = pencil.capacity_bound
    return out


def _modulus(args):
    g = load_graph(args.graph)
    t = (_vertex(g, args.v), _vertex(g, args.w))
    res = modulus_p(g, t, args.p, args.tol)
    return {"p": res.p, "modulus": res.value, "gap": res.gap,
            "rho": {str(lab): float(r) for lab, r in zip(g.labels, res.rho)},
            "active_paths": [[g.labels[z] for z in c] for c in res.active_paths],
            "cut_value": min_vertex_cut(g, t).value}


def _pencil(args):
    g = load_graph(args.graph)
    t = (_vertex(g, args.v), _vertex(g, args.w))
    if args.p == 1:
        pencil = pencil_from_flow(g, t)
        return {"p": 1.0, "pencil": _pencil_json(g, pencil), "C": pencil.capacity_bound}
    res = modulus_p(g, t, args.p, args.tol)
    pencil, empirical = pencil_from_duals(res, g.mu, seed=args.seed)
    return {"p": res.p, "pencil": _pencil_json(g, pencil), "C": pencil.capacity_bound,
            "C_empirical": empirical, "seed": args.seed}


def _discretize(args):
    cloud = _load_cloud(args)
    r = _floats(args.r)
    if len(r) != 1:
        raise ValidationError("discretize takes a single --r")
    weights = None
    if args.L is not None:
        if args.v is None or args.w is None:
            raise ValidationError("Riesz weighting needs --v and --w")
        weights = disc.riesz_weights(cloud, _cloud_point(cloud, args.v), _cloud_point(cloud, args.w), args.L).weights
    net = disc.build_net(cloud, r[0], weights)
    doc = graph_to_dict(net.graph)
    doc["net_indices"] = [int(i) for i in net.net_indices]
    doc["r"] = net.r
    return doc


def _experiment(args):
    cloud = _load_cloud(args)
    x, y = _cloud_point(cloud, args.v), _cloud_point(cloud, args.w)
    indicator = _cloud_set(cloud, args.set_spec)
    reference = None
    if args.reference:
        try:
            reference = json.loads(args.reference)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"--reference is not JSON: {exc}") from None
    weighting = "plain" if args.L is None else "riesz"
    report = disc.net_experiment(cloud, x, y, indicator, _floats(args.r), weighting,
                                 L=args.L or 1.0, reference=reference)
    report.metadata["seed"] = args.seed
    return report.to_csv()


def _verify(args):
    return run_verify(args.max_vertices, args.seed, args.count)


_HANDLERS = {
    "analyze": _analyze, "mincut": _mincut, "fibrate": _fibrate, "slim": _slim, "modulus": _modulus,
    "pencil": _pencil, "discretize": _discretize, "experiment": _experiment, "verify": _verify,
}


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(doc):
    return json.dumps(doc, indent=2) + "\n"


def run(argv=None):
    args = _parser().parse_args(argv)
    if args.schema:
        _emit(_dump(SCHEMA), args.out)
        return 0
    try:
        _validate(args)
        result = _HANDLERS[args.command](args)
    except (ValidationError, OSError) as exc:
        _emit(_dump({"error": {"type": type(exc).__name__, "message": str(exc)}}), args.out)
        return 1
    except (ComputationError, SepGraphError) as exc:
        _emit(_dump({"error": {"type": type(exc).__name__, "message": str(exc)}}), args.out)
        return 2
    if isinstance(result, str):
        _emit(result, args.out)
        return 0
    _emit(_dump(result), args.out)
    if args.command == "verify" and result["counterexamples"]:
        sys.stderr.write(json.dumps(result["first_counterexample"]["graph"]) + "\n")
        return 2
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

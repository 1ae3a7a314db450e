"""
Subcommand handlers. Each takes the parsed arguments and returns the text
to emit; main.py owns output, logging setup and exit codes.
"""
import csv
import io
import logging
from argparse import Namespace
from typing import List, Optional

from src.core.budget import CheckBudget
from src.core.classes import Sample
from src.core.errors import PreconditionError
from src.core.loaders import (
    class_to_model,
    dumps,
    load_class,
    load_distribution,
    load_menu,
    load_sample,
    menu_to_model,
)
from src.core.schemas import MenuReportModel, PredictionModel, SquareModel
from src.dims.dimensions import dimension_report, ds_dimension, natarajan_dimension
from src.oig.graph import build_oig
from src.oig.orientation import brute_force_orientation, greedy_orientation, optimal_orientation, orientation_to_model
from src.shift.shifting import shift_once, shift_to_fixed_point
from src.learn.predictors import Predictor, list_learn
from src.learn.evaluation import agnostic_report, learning_curve, loo_bad_count
from src.compress.list_scheme import list_compress
from src.compress.menu_scheme import menu_compress
from src.compress.scheme import compress_end_to_end
from src.complex.simplicial import (
    alternating_squares,
    bipartite_to_pseudocube,
    complex_report,
    complex_to_model,
    complex_to_pseudocube,
    empty_squares,
    has_four_cycle,
    is_good,
    load_bipartite,
    load_complex,
    pseudocube_to_complex,
)
from src.complex.groups import check_polish_conditions, load_group
from src.complex.generators import gen_boolean_cube, gen_hexagon, gen_torus_pseudocube, gen_tree_class

logger = logging.getLogger(__name__)


def _budget(args: Namespace) -> Optional[CheckBudget]:
    return CheckBudget(args.budget) if getattr(args, "budget", None) is not None else None


def _parse_ints(raw: Optional[str]) -> Optional[List[int]]:
    if raw is None:
        return None
    try:
        return [int(part) for part in raw.split(",") if part.strip()]
    except ValueError:
        raise PreconditionError(f"expected a comma-separated list of integers, got {raw!r}")


def cmd_dims(args: Namespace) -> str:
    concept_class = load_class(args.class_file)
    report = dimension_report(concept_class, _budget(args), args.threads)
    return dumps(report.to_model())


def cmd_orient(args: Namespace) -> str:
    concept_class = load_class(args.class_file)
    g = build_oig(concept_class)
    if args.method == "greedy":
        sigma = greedy_orientation(g, args.bound)
        if sigma is None:
            return dumps({"bound": args.bound, "found": False})
        return dumps(orientation_to_model(g, sigma))
    if args.method == "brute-force":
        sigma, k = brute_force_orientation(g)
    else:
        sigma, k = optimal_orientation(g)
    return dumps(orientation_to_model(g, sigma, k))


def cmd_shift(args: Namespace) -> str:
    concept_class = load_class(args.class_file)
    if args.direction is not None:
        return dumps(class_to_model(shift_once(concept_class.reinterned(), args.direction)))
    trace = shift_to_fixed_point(concept_class, _parse_ints(args.policy), _budget(args))
    return dumps(trace.to_model())


def _curve_csv(rows) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["n", "error", "bound", "bound_name"])
    for row in rows:
        writer.writerow([row.n, f"{row.error:.6f}", f"{row.bound:.6f}", row.bound_name])
    return buffer.getvalue()


def cmd_learn(args: Namespace) -> str:
    concept_class = load_class(args.class_file)
    mu = load_menu(args.menu) if args.menu else None
    predict = Predictor.menu_one_inclusion(concept_class, mu) if mu else Predictor.one_inclusion(concept_class)

    if args.distribution:
        D = load_distribution(args.distribution)
        ns = _parse_ints(args.ns) or [1, 2, 3]
        d_ds = ds_dimension(concept_class, _budget(args)).value
        d_n = natarajan_dimension(concept_class, _budget(args)).value
        rows = learning_curve(predict, D, ns, d_ds, d_n, args.mode, args.trials, args.seed)
        if args.format == "csv":
            return _curve_csv(rows)
        return dumps({
            "curve": [
                {"n": r.n, "error": r.error, "bound": r.bound, "bound_name": r.bound_name} for r in rows
            ],
            **agnostic_report(concept_class, D),
        })

    if not args.sample:
        raise PreconditionError("learn needs --sample or --distribution")
    S = load_sample(args.sample)
    if args.loo:
        return dumps({"n": len(S), "bad": loo_bad_count(predict, S, args.threads), "predictor": predict.kind})
    if args.x is None:
        raise PreconditionError("learn needs --x, --loo or --distribution")
    return dumps(PredictionModel(x=args.x, label=predict(S, args.x), predictor=predict.kind))


def cmd_list_learn(args: Namespace) -> str:
    concept_class = load_class(args.class_file)
    S = load_sample(args.sample)
    d = args.d if args.d is not None else ds_dimension(concept_class, _budget(args)).value
    if args.truncate and len(S) > d + args.t:
        logger.info(f"Truncating sample of {len(S)} examples to the first {d + args.t}")
        S = Sample(S.examples[:d + args.t])
    mu = list_learn(concept_class, args.t, S, d)
    model = menu_to_model(mu)
    return dumps(MenuReportModel(p=model.p, entries=model.entries, list_size=mu.list_size()))


def cmd_compress(args: Namespace) -> str:
    concept_class = load_class(args.class_file)
    S = load_sample(args.sample)
    if args.stage == "list":
        result = list_compress(concept_class, S, args.t if args.t is not None else 1, args.d, args.seed)
    elif args.stage == "menu":
        if not args.menu:
            raise PreconditionError("the menu stage needs --menu")
        result = menu_compress(concept_class, load_menu(args.menu), S, args.d_n, args.seed)
    else:
        result = compress_end_to_end(concept_class, S, args.t, args.seed, args.d, args.d_n)
    return dumps(result.to_model())


def cmd_complex(args: Namespace) -> str:
    action = args.complex_command
    if action == "to-complex":
        return dumps(complex_to_model(pseudocube_to_complex(load_class(args.input))))
    if action == "from-bipartite":
        edges = load_bipartite(args.input)
        result = bipartite_to_pseudocube(edges)
        payload = {
            "pseudo_cube": result.ok,
            "leaf": list(result.leaf) if result.leaf else None,
            "has_four_cycle": has_four_cycle(edges),
            "class": class_to_model(result.concept_class).model_dump(),
        }
        if result.ok:
            payload["natarajan"] = natarajan_dimension(result.concept_class, _budget(args)).value
        return dumps(payload)

    C = load_complex(args.input)
    if action == "check":
        return dumps(complex_report(C))
    if action == "to-cube":
        return dumps(class_to_model(complex_to_pseudocube(C)))
    if action == "squares":
        coloring = C.coloring if C.coloring is not None else is_good(C).coloring
        alternating = alternating_squares(C, coloring) if coloring is not None else []
        return dumps({
            "alternating": [SquareModel(cycle=list(s)).model_dump() for s in alternating],
            "empty": [SquareModel(cycle=list(s)).model_dump() for s in empty_squares(C)],
        })
    raise PreconditionError(f"unknown complex command {action!r}")


def cmd_coset(args: Namespace) -> str:
    F, subs = load_group(args.group_file)
    return dumps(check_polish_conditions(F, subs).to_model())


def cmd_gen(args: Namespace) -> str:
    kind = args.gen_command
    if kind == "hexagon":
        return dumps(class_to_model(gen_hexagon()))
    if kind == "cube":
        return dumps(class_to_model(gen_boolean_cube(args.d)))
    if kind == "tree":
        return dumps(class_to_model(gen_tree_class(args.k, args.m)))
    if kind == "torus":
        torus = gen_torus_pseudocube()
        if args.complex:
            return dumps(complex_to_model(torus.complex))
        return dumps(class_to_model(torus.concept_class))
    raise PreconditionError(f"unknown generator {kind!r}")

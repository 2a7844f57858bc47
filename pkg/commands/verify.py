import logging

import pandas as pd

from algebra.catalog import cached_catalog
from algebra.complexes import verify_double_endo
from algebra.errors import WorkbenchError
from algebra.repdim import (scan, verify_hereditary_corollary, verify_main_theorem, verify_quotient_rep_dim,
                            verify_tilting_corollary)
from algebra.silting import run_silting_checks, verify_endomorphism_pd_lemma
from algebra.verdicts import results_frame, verdict_of
from utils.fixtures import kind_of, load_algebra, load_complex, load_module
from utils.helpers import emit, exit_code, frame_text, section

logger = logging.getLogger(__name__)

HELP = "run every applicable check on complexes, tilting modules or a whole algebra"

SHIPPED = ("P-41", "P-42", "P-43", "T-41")
WORKED = {"4.1": ("P-41", "T-41"), "4.2": ("P-42",), "4.3": ("P-43",)}


def add_arguments(parser):
    parser.add_argument("targets", nargs="*", help="complex, module or algebra files or fixture names")
    parser.add_argument("--all", action="store_true", help=f"check the shipped fixtures {', '.join(SHIPPED)}")
    parser.add_argument("--example", action="append", default=[], choices=sorted(WORKED),
                        help="check the fixtures of one worked example; may be repeated")
    parser.add_argument("--scan", metavar="ALGEBRA", help="check every two-term silting complex of an algebra")


def _guarded(fn, *args):
    try:
        return fn(*args)
    except WorkbenchError as exc:
        logger.warning(f"{fn.__name__} stopped: {exc}")
        return verdict_of(fn.__name__.replace("verify_", "").replace("_", " "), False, str(exc))


def complex_checks(cx, config):
    seed = config.seed
    catalog = cached_catalog(cx.algebra, config.catalog_bound, seed)
    results = [_guarded(verify_double_endo, cx, seed)]
    results += run_silting_checks(cx, catalog, seed)
    results.append(_guarded(verify_endomorphism_pd_lemma, cx, None, catalog, seed))
    for fn in (verify_main_theorem, verify_quotient_rep_dim, verify_hereditary_corollary):
        results.append(_guarded(fn, cx, catalog, seed, config.catalog_bound))
    return results


def module_checks(t, config):
    catalog = cached_catalog(t.algebra, config.catalog_bound, config.seed)
    return [_guarded(verify_tilting_corollary, t, catalog, config.seed, config.catalog_bound)]


def _checks_for(target, config):
    kind = kind_of(target, config.fixtures_dir)
    if kind == "complex":
        return complex_checks(load_complex(target, config.fixtures_dir, config.field), config)
    if kind == "module":
        return module_checks(load_module(target, config.fixtures_dir, config.field), config)
    raise WorkbenchError(f"{target} is an algebra; use --scan {target}")


def app(args, config):
    targets = list(args.targets) + (list(SHIPPED) if args.all else [])
    for key in args.example:
        targets += [t for t in WORKED[key] if t not in targets]
    if not targets and not args.scan:
        raise WorkbenchError("Nothing to verify: name targets, --example, --all or --scan ALGEBRA")
    frames, payload, everything = [], {}, []
    for target in targets:
        results = _checks_for(target, config)
        everything += results
        payload[target] = [r.to_dict() for r in results]
        frames.append(results_frame(results).assign(target=target))
    lines = [frame_text(pd.concat(frames)[["target", "check", "verdict", "detail"]])] if frames else []
    if args.scan:
        alg = load_algebra(args.scan, config.fixtures_dir, config.field)
        table, results = scan(alg, seed=config.seed, catalog_bound=config.catalog_bound)
        everything += results
        payload["scan"] = {"algebra": alg.name, "complexes": table.to_dict(orient="records"),
                           "results": [r.to_dict() for r in results]}
        lines.append(section(f"{len(table)} two-term silting complexes over {alg.name}", frame_text(table)))
    emit(config, payload, "\n".join(lines))
    return exit_code(everything)

import logging

from algebra.catalog import brute_force_indecomposables, enumerate_indecomposables, same_catalog
from utils.fixtures import load_algebra
from utils.helpers import emit, frame_text, section

logger = logging.getLogger(__name__)

HELP = "list the indecomposable modules with their AR data"


def add_arguments(parser):
    parser.add_argument("algebra", help="algebra file or fixture name")
    parser.add_argument("--brute-force", action="store_true",
                        help="cross-check the knitted catalog by exhaustive search")


def app(args, config):
    alg = load_algebra(args.algebra, config.fixtures_dir, config.field)
    catalog = enumerate_indecomposables(alg, config.catalog_bound, config.seed)
    orbits = catalog.tau_orbits()
    payload = {"algebra": alg.name, "complete": catalog.complete, "bound": catalog.bound,
               "count": len(catalog), "modules": catalog.to_records(), "tau_orbits": orbits}
    lines = [f"{len(catalog)} indecomposables over {alg.name}"
             + ("" if catalog.complete else f" (incomplete at dimension bound {catalog.bound})"),
             frame_text(catalog.to_frame()),
             section("tau-orbits, projective end first", "\n".join(" -> ".join(o) for o in orbits))]
    if args.brute_force:
        oracle = brute_force_indecomposables(alg, config.catalog_bound, config.max_candidates)
        agree = same_catalog(catalog, oracle)
        payload["brute_force_agrees"] = agree
        lines.append(f"brute-force search found {len(oracle)} modules; agrees: {agree}")
    emit(config, payload, "\n".join(lines))
    return 0

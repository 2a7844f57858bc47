import logging

import pandas as pd

from algebra.catalog import cached_catalog
from algebra.silting import tilting_flags, tilting_modules, torsion_pair
from utils.fixtures import load_algebra, load_complex
from utils.helpers import emit, frame_text, section, tri_state

logger = logging.getLogger(__name__)

HELP = "classical tilting modules with their separating and splitting flags"


def add_arguments(parser):
    parser.add_argument("algebra", help="algebra file or fixture name")
    parser.add_argument("--against", metavar="COMPLEX",
                        help="report whether some tilting module has the torsion class of this complex")


def _same_class(a, b):
    """Catalog modules compared by identity"""
    return {id(m) for m in a} == {id(m) for m in b}


def app(args, config):
    alg = load_algebra(args.algebra, config.fixtures_dir, config.field)
    catalog = cached_catalog(alg, config.catalog_bound, config.seed)
    flags = [tilting_flags(t, catalog, config.seed, config.catalog_bound, config.bound)
             for t in tilting_modules(alg, catalog, config.seed)]
    frame = pd.DataFrame([{"module": f.module.label(), "separating": tri_state(f.separating),
                           "splitting": tri_state(f.splitting), "Fac T": ", ".join(m.label() for m in f.torsion)}
                          for f in flags])
    payload = {"algebra": alg.name, "tilting_modules": [f.to_dict() for f in flags]}
    lines = [section(f"{len(flags)} tilting modules over {alg.name}", frame_text(frame))]
    if args.against:
        cx = load_complex(args.against, config.fixtures_dir, algebra=alg)
        torsion = torsion_pair(cx, catalog).torsion
        wanted = [m.label() for m in torsion]
        matches = [f.module.label() for f in flags if _same_class(f.torsion, torsion)]
        payload["against"] = {"complex": cx.label(), "T": wanted, "matches": matches}
        lines.append(f"T({cx.label()}) = {{{', '.join(wanted)}}}; "
                     f"tilting modules with this torsion class: {', '.join(matches) or 'none'}")
    emit(config, payload, "\n".join(lines))
    return 0

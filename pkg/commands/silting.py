import logging

from algebra.catalog import cached_catalog
from algebra.complexes import basic_summands, g_vector, is_presilting, is_silting, is_tilting
from algebra.repdim import flag_or_none
from algebra.silting import analysis, check_id_restriction, check_pd_restriction, is_separating, is_splitting
from utils.fixtures import load_complex
from utils.helpers import emit, frame_text, section, tri_state

logger = logging.getLogger(__name__)

HELP = "silting and tilting verdicts, torsion pair and endomorphism algebra of a complex"


def add_arguments(parser):
    parser.add_argument("complex", help="complex file or fixture name")


def _restriction(fn, cx, catalog, seed):
    return flag_or_none(lambda *a: fn(*a)[0], cx, catalog, seed)


def app(args, config):
    cx = load_complex(args.complex, config.fixtures_dir, config.field)
    seed = config.seed
    summands = basic_summands(cx, seed)
    flags = {"presilting": is_presilting(cx), "silting": is_silting(cx, seed), "tilting": is_tilting(cx, seed)}
    payload = {"complex": cx.label(), "algebra": cx.algebra.name, **flags,
               "summands": [dict(s.to_dict(), g_vector=g_vector(s)) for s in summands]}
    lines = [f"{cx.label()} over {cx.algebra.name}",
             "  ".join(f"{k}: {tri_state(v)}" for k, v in flags.items()),
             section("basic summands", "\n".join(f"{s.label()}   H0 = {s.h0().label()}   H-1 = {s.hm1().label()}"
                                                 for s in summands))]
    if flags["silting"]:
        catalog = cached_catalog(cx.algebra, config.catalog_bound, seed)
        a = analysis(cx, catalog, seed)
        more = {"separating": flag_or_none(is_separating, cx, catalog, seed),
                "splitting": flag_or_none(is_splitting, cx, catalog, seed),
                "id_restriction": _restriction(check_id_restriction, cx, catalog, seed),
                "pd_restriction": _restriction(check_pd_restriction, cx, catalog, seed)}
        b = a.b_algebra
        payload.update(more)
        payload.update({"torsion_pair": a.report.to_dict(), "B": b.describe(), "B_dim": b.dim})
        lines += ["  ".join(f"{k}: {tri_state(v)}" for k, v in more.items()),
                  section("torsion pair", frame_text(a.report.to_frame())),
                  section(f"B = End({cx.label()}), dimension {b.dim}", b.describe())]
        if not catalog.complete:
            lines.append(f"catalog incomplete at dimension bound {catalog.bound}")
    emit(config, payload, "\n".join(lines))
    return 0

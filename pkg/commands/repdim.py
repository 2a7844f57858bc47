import logging

from algebra.repdim import hereditary_type, rep_dim
from utils.fixtures import load_algebra
from utils.helpers import emit, frame_text, section

logger = logging.getLogger(__name__)

HELP = "representation dimension with its Auslander generator"


def add_arguments(parser):
    parser.add_argument("algebra", help="algebra file or fixture name")


def app(args, config):
    alg = load_algebra(args.algebra, config.fixtures_dir, config.field)
    report = rep_dim(alg, config.catalog_bound, config.bound, config.max_candidates, config.seed)
    payload = report.to_dict()
    lines = [f"rep.dim {alg.name} = {report}", f"representation type: {report.finiteness}"]
    if alg.is_hereditary():
        payload["hereditary_type"] = hereditary_type(alg)
        lines.append(f"hereditary of type {' + '.join(payload['hereditary_type'])}")
    if report.generator:
        lines.append(f"Auslander generator: {' + '.join(m.label() for m in report.generator)} "
                     f"(gl.dim End = {report.gldim})")
    if not report.candidates.empty:
        lines.append(section("generator-cogenerators tried", frame_text(report.candidates)))
    if report.note:
        lines.append(f"note: {report.note}")
    emit(config, payload, "\n".join(lines))
    return 0

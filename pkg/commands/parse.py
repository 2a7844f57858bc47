import logging

import pandas as pd

from utils.fixtures import kind_of, load_algebra, load_complex, load_module
from utils.helpers import emit, section

logger = logging.getLogger(__name__)

HELP = "parse an algebra, module or complex file and summarise it"


def add_arguments(parser):
    parser.add_argument("target", help="file path or fixture name")


def _algebra_report(alg):
    cartan = pd.DataFrame(alg.cartan(), index=list(alg.vertices), columns=list(alg.vertices))
    payload = {"kind": "algebra", "name": alg.name, "field": alg.p, "dim": alg.dim,
               "basis": [q.label() for q in alg.basis], "radical_dim": int(alg.radical_basis().shape[1]),
               "hereditary": alg.is_hereditary(), "cartan": alg.cartan().tolist()}
    text = "\n".join([
        alg.describe(),
        f"dimension {alg.dim} over GF({alg.p})",
        f"basis: {', '.join(payload['basis'])}",
        f"radical dimension {payload['radical_dim']}",
        section("Cartan matrix (paths from row to column)", cartan.to_string()),
    ])
    return payload, text


def _module_report(m):
    payload = {"kind": "module", "over": m.algebra.name, **m.to_dict()}
    text = "\n".join([f"module {m.label()} over {m.algebra.name}",
                      f"dimension vector {' '.join(map(str, m.dim_vector))}"])
    return payload, text


def _complex_report(cx):
    payload = {"kind": "complex", "over": cx.algebra.name, **cx.to_dict()}
    text = "\n".join([cx.describe(), f"H0 = {cx.h0().label()}", f"H-1 = {cx.hm1().label()}"])
    return payload, text


def app(args, config):
    kind = kind_of(args.target, config.fixtures_dir)
    if kind == "algebra":
        payload, text = _algebra_report(load_algebra(args.target, config.fixtures_dir, config.field))
    elif kind == "module":
        payload, text = _module_report(load_module(args.target, config.fixtures_dir, config.field))
    else:
        payload, text = _complex_report(load_complex(args.target, config.fixtures_dir, config.field))
    emit(config, payload, text)
    return 0

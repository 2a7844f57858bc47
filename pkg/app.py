import argparse
import logging
import sys

from algebra.errors import WorkbenchError
from commands import COMMANDS
from utils.config import FORMATS, LOG_LEVELS, load_config

logger = logging.getLogger(__name__)


def common_arguments():
    """Flags every command accepts; unset flags fall back to the environment"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=int, help="prime p of the ground field GF(p)")
    common.add_argument("--bound", type=int, help="cutoff for projective, injective and global dimensions")
    common.add_argument("--catalog-bound", type=int, help="per-vertex dimension bound for knitting")
    common.add_argument("--max-candidates", type=int, help="cap on generator-cogenerators and brute-force search")
    common.add_argument("--format", choices=FORMATS, help="report format")
    common.add_argument("--fixtures-dir", help="directory searched for fixture names")
    common.add_argument("--log-level", choices=LOG_LEVELS, help="logging level")
    common.add_argument("--seed", type=int, help="seed of every random sample")
    return common


def build_parser():
    parser = argparse.ArgumentParser(prog="app.py",
                                     description="Two-term silting complexes and representation dimension over GF(p)")
    sub = parser.add_subparsers(dest="command", required=True)
    common = common_arguments()
    for name, module in COMMANDS.items():
        cmd = sub.add_parser(name, help=module.HELP, parents=[common])
        module.add_arguments(cmd)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = load_config(field=args.field, bound=args.bound, catalog_bound=args.catalog_bound,
                             max_candidates=args.max_candidates, format=args.format,
                             fixtures_dir=args.fixtures_dir, log_level=args.log_level, seed=args.seed)
        logging.basicConfig(level=config.log_level.upper(), format="%(levelname)s %(name)s: %(message)s")
        logger.info(f"Running {args.command} with {config}")
        return COMMANDS[args.command].app(args, config)
    except WorkbenchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

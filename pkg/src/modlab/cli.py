import os
import sys
import time
from argparse import ArgumentParser
from functools import partial

import pandas as pd
import yaml
from anytree import Node, RenderTree
from tabulate import tabulate

from modlab import (
    CorpusFileError,
    EnumerationRefused,
    InputError,
    ValidationError,
    get_version,
)
from modlab.cmd_utils import (
    colour_status,
    init_console,
    print_fail,
    print_info,
    print_line,
    print_success,
    print_warn,
)
from modlab.corpus import (
    CorpusManifest,
    corpus_generate,
    module_from_dict,
    ring_from_dict,
)
from modlab.functors import (
    comparison_map,
    double_dual_eval,
    dual_coincidence,
    r_extension,
    star_double_dual_eval,
)
from modlab.linalg import is_isomorphism, smith_normal_form
from modlab.manifest_schema import ReportSchema
from modlab.modules import cyclic_module, free_module, hom_module, tensor_over_R
from modlab.rings import algebra_corpus
from modlab.utils import (
    chunks,
    load_yaml_file,
    matrix_to_str,
    parse_int_list,
    parse_matrix,
)
from modlab.verifier import SUITES, run_suite
from modlab.zoo import default_zoo

CONFIG_FILE = "config.yaml"

DEFAULT_CONFIG = {
    "enumeration_bound": 64,
    "degree_bound": 2,
    "max_ring_order": 16,
    "max_module_order": 64,
    "max_algebra_order": 16,
    "exhaustive_limit": 4096,
    "n_workers": 1,
}

SUITE_SETTINGS = (
    "enumeration_bound",
    "degree_bound",
    "exhaustive_limit",
    "max_ring_order",
    "max_module_order",
)


def _load_config(cfile):
    if not os.path.isfile(cfile):
        return dict(DEFAULT_CONFIG)
    with open(cfile, "r") as f:
        loaded = yaml.safe_load(f) or {}
    unknown = set(loaded) - set(DEFAULT_CONFIG)
    if unknown:
        raise InputError(f"Unknown config keys: {', '.join(sorted(unknown))}")
    return {**DEFAULT_CONFIG, **loaded}


def show_config(args):
    if os.path.exists(args.config):
        print("Using Config File:", args.config)
    else:
        print_info(
            f"No override config file found at {args.config}. Using default values."
        )
    print(yaml.safe_dump(_load_config(args.config), sort_keys=False), end="")


def show_version():
    return f"modlab {get_version()}"


def _ring(spec):
    """A zoo name or a YAML file holding a serialized ring"""
    zoo = default_zoo()
    if spec in zoo:
        return zoo.ring(spec)
    if os.path.isfile(spec):
        return ring_from_dict(load_yaml_file(spec))
    raise InputError(f"{spec} is neither a zoo ring nor a ring file")


def _module(ring, spec, side="left"):
    """free:K, cyclic:x₁,… (R/Rx on the left, R/xR on the right) or a YAML file"""
    kind, _, rest = spec.partition(":")
    if kind == "free" and rest:
        try:
            return free_module(ring, int(rest), side)
        except ValueError:
            raise InputError(f"Free module rank must be an integer, got {rest!r}")
    if kind == "cyclic" and rest:
        elements = chunks(parse_int_list(rest), ring.rank)
        return cyclic_module(ring, elements, side)
    if os.path.isfile(spec):
        module = module_from_dict(load_yaml_file(spec), ring)
        if module.side != side:
            raise InputError(f"{spec} holds a {module.side} module, need {side}")
        return module
    raise InputError(f"Cannot read module {spec!r}")


def generate_corpus(args):
    config = _load_config(args.config)
    t0 = time.time()
    print_line("Corpus generation starts")
    manifest = corpus_generate(
        args.max_ring_order,
        args.max_module_order,
        args.seed,
        enumeration_bound=config["enumeration_bound"],
        max_algebra_order=config["max_algebra_order"],
    )
    path = manifest.write(args.out)
    print(f"Manifest: {path}")
    print_info(
        f"{len(manifest.rings)} rings, {len(manifest.modules)} modules, "
        f"{len(manifest.algebras)} algebras, {len(manifest.arrows)} arrows"
    )
    duration = round(time.time() - t0, 2)
    print_line(f"Corpus {manifest.identifier} written in {duration}s", "success")


def show_corpus(args):
    manifest = CorpusManifest.load(args.path)
    print_line(f"Corpus {manifest.identifier}")
    if args.tree:
        root = Node(f"corpus {manifest.identifier} (seed {manifest.seed})")
        rings = {r["id"]: Node(r["id"], parent=root) for r in manifest.rings}
        groups = {}
        for rid, node in rings.items():
            for label in ("left modules", "right modules", "algebras"):
                groups[(rid, label)] = Node(label, parent=node)
        for m in manifest.modules:
            label = f"{m['module']['side']} modules"
            Node(m["id"], parent=groups[(m["ring_id"], label)])
        for a in manifest.algebras:
            label = f"{a['id']}: {a['algebra']['name']}"
            Node(label, parent=groups[(a["base"], "algebras")])
        for pre, fill, node in RenderTree(root):
            print("%s%s" % (pre, node.name))
    else:
        table = []
        for r in manifest.rings:
            rid = r["id"]
            sides = [
                m["module"]["side"] for m in manifest.modules if m["ring_id"] == rid
            ]
            n_algebras = sum(1 for a in manifest.algebras if a["base"] == rid)
            n_arrows = sum(
                1 for u in manifest.arrows if u["source"].startswith(f"{rid}:")
            )
            orders = [int(x) for x in r["ring"]["orders"]]
            table.append(
                [
                    rid,
                    " ⊕ ".join(f"ℤ/{d}" for d in orders),
                    sides.count("left"),
                    sides.count("right"),
                    n_algebras,
                    n_arrows,
                ]
            )
        headers = ["Ring", "Additive group", "Left", "Right", "Algebras", "Arrows"]
        print(tabulate(table, headers=headers, tablefmt="psql"))
    print_line(f"{len(manifest.rings)} rings", "success")


def write_report(report, out):
    document = report.to_dict()
    ReportSchema().validate(document)
    directory = os.path.dirname(out)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(out, "w", encoding="utf-8") as f:
        yaml.safe_dump(document, f, sort_keys=False, allow_unicode=True)


def verify(args):
    config = _load_config(args.config)
    t0 = time.time()
    print_line(f"Suite {args.suite} starts")
    corpus = CorpusManifest.load(args.corpus).to_corpus()
    print(f"Corpus: {corpus.identifier}")
    settings = {k: config[k] for k in SUITE_SETTINGS}
    n_workers = args.n_workers if args.n_workers is not None else config["n_workers"]
    report = run_suite(args.suite, corpus, args.seed, settings, n_workers)
    write_report(report, args.out)
    print(f"Report: {args.out}")

    if args.verbose:
        table = [
            [c.case_id, colour_status(c.status), c.provenance, c.detail]
            for c in report.cases
        ]
        print(tabulate(table, headers=["Case", "Status", "Provenance", "Detail"]))
    summary = report.summary
    print(tabulate([list(summary.values())], headers=list(summary), tablefmt="psql"))
    for c in report.cases:
        if c.status == "fail":
            print_fail(f"{c.case_id}: {c.detail}")

    code = report.exit_code
    duration = round(time.time() - t0, 2)
    if code == 2:
        print_warn("Every case was refused")
    print_line(
        f"{summary['pass']}/{len(report.cases)} cases passed in {duration}s",
        "fail" if code else "success",
    )
    sys.exit(code)


def compute_snf(args):
    matrix = parse_matrix(args.matrix)
    u, d, v = smith_normal_form(matrix)
    diagonal = [d[i, i] for i in range(min(d.rows, d.cols))]
    print(f"D = diag({', '.join(str(x) for x in diagonal)})")
    print("U =")
    print(matrix_to_str(u))
    print("V =")
    print(matrix_to_str(v))


def compute_hom(args):
    ring = _ring(args.ring)
    source = _module(ring, args.source, args.side)
    target = _module(ring, args.target, args.side)
    hom = hom_module(source, target, args.side)
    print(f"Hom_{ring}({source}, {target}) = {hom.group}")
    for i, f in enumerate(hom.generators()):
        print(f"generator {i}:")
        print(matrix_to_str(f.map.matrix))


def compute_tensor(args):
    ring = _ring(args.ring)
    right = _module(ring, args.right, "right")
    left = _module(ring, args.left, "left")
    print(tensor_over_R(right, left).group)


def compute_rker(args):
    ring = _ring(args.ring)
    right = _module(ring, args.right, "right")
    left = _module(ring, args.left, "left")
    ext = r_extension(right, left)
    iso = is_isomorphism(comparison_map(ext))
    verdict = "isomorphism" if iso else "not an isomorphism"
    print(f"{ext.group} (comparison map: {verdict})")


def compute_dualeval(args):
    config = _load_config(args.config)
    ring = _ring(args.ring)
    module = _module(ring, args.module, "left")
    corpus = algebra_corpus(
        ring,
        max(config["max_algebra_order"], ring.order),
        args.seed,
        config["enumeration_bound"],
    )
    table = []
    for algebra in corpus.objects:
        dd = double_dual_eval(module, algebra)
        star = star_double_dual_eval(module, algebra)
        table.append(
            [
                str(algebra),
                str(dd.group),
                "yes" if dd.is_isomorphism else "no",
                "yes" if star.is_isomorphism else "no",
                "yes" if dual_coincidence(module, algebra) else "no",
            ]
        )
    headers = ["Algebra", "S ⊗ M", "double dual", "star double dual", "duals agree"]
    print(tabulate(table, headers=headers, tablefmt="psql"))


def show_report(args):
    document = load_yaml_file(args.path)
    ReportSchema().validate(document)
    cases = pd.DataFrame(document["cases"])
    if document["suite"] == "all":
        cases["suite"] = cases["id"].str.split(":").str[0]
    else:
        cases["suite"] = document["suite"]
    if args.csv:
        flat = cases.drop(columns=["witness"], errors="ignore")
        print(flat.to_csv(index=False), end="")
        return
    print_line(f"Report of suite {document['suite']} on corpus {document['corpus']}")
    print(f"Seed: {document['seed']}; modlab {document['version']}")
    for key, value in (document.get("meta") or {}).items():
        print(f"{key}: {value}")
    counts = cases.groupby(["suite", "status"]).size().unstack(fill_value=0)
    print(tabulate(counts, headers="keys", tablefmt="psql"))
    failed = cases[cases["status"] == "fail"]
    for _, row in failed.iterrows():
        print_fail(f"{row['id']}: {row['detail']}")
    if failed.empty:
        print_success("No hard failures")


def main():
    if sys.version_info < (3, 8):
        sys.exit("This program requires python version 3.8 or later")

    init_console()
    parser = ArgumentParser(
        description="Exact computations with modules over finite rings",
        epilog="modlab v{}".format(get_version()),
    )

    def set_print_help_on_error(parser):
        def print_help_subparser(subparser, args):
            subparser.print_help()
            print_fail("No action was requested. Please use as specified above.")

        parser.set_defaults(func=partial(print_help_subparser, parser))

    set_print_help_on_error(parser)

    parser.add_argument("-v", "--version", action="version", version=show_version())
    parser.add_argument(
        "--config",
        help="path to config.yaml",
        default=os.path.join(os.getcwd(), CONFIG_FILE),
    )

    subparsers = parser.add_subparsers(title="Commands")

    # parser for config command
    parser_c = subparsers.add_parser("config", help="show the active configuration")
    parser_c.set_defaults(func=show_config)

    # parsers for corpus commands
    parser_co = subparsers.add_parser("corpus", help="corpus commands")
    set_print_help_on_error(parser_co)
    pco = parser_co.add_subparsers(title="Corpus commands")

    pco_g = pco.add_parser("generate", help="generate a corpus manifest")
    pco_g.add_argument("--max-ring-order", type=int, default=16, metavar="N")
    pco_g.add_argument("--max-module-order", type=int, default=64, metavar="N")
    pco_g.add_argument("--seed", type=int, default=0, metavar="K")
    pco_g.add_argument("--out", required=True, metavar="DIR", help="output directory")
    pco_g.set_defaults(func=generate_corpus)

    pco_s = pco.add_parser("show", help="show the contents of a corpus")
    pco_s.add_argument("path", metavar="DIR", help="corpus directory or manifest")
    pco_s.add_argument("--tree", action="store_true", help="Show as tree")
    pco_s.set_defaults(func=show_corpus)

    # parser for verify command
    parser_v = subparsers.add_parser("verify", help="run a theorem suite on a corpus")
    parser_v.add_argument("--suite", required=True, choices=SUITES)
    parser_v.add_argument("--corpus", required=True, metavar="DIR")
    parser_v.add_argument("--out", required=True, metavar="FILE", help="report file")
    parser_v.add_argument("--seed", type=int, default=0, metavar="K")
    parser_v.add_argument(
        "--n-workers",
        type=int,
        default=None,
        help="number of processes; negative values count down from the CPU count",
    )
    parser_v.add_argument("-v", "--verbose", action="store_true", help="list all cases")
    parser_v.set_defaults(func=verify)

    # parsers for compute commands
    parser_cp = subparsers.add_parser("compute", help="single computations")
    set_print_help_on_error(parser_cp)
    pcp = parser_cp.add_subparsers(title="Computations")

    ring_help = "zoo ring name or ring YAML file"
    module_help = "free:K, cyclic:x1,... or module YAML file"

    pcp_s = pcp.add_parser("snf", help="Smith normal form of an integer matrix")
    pcp_s.add_argument("matrix", help="matrix as a list of rows, e.g. [[2,4],[6,8]]")
    pcp_s.set_defaults(func=compute_snf)

    pcp_h = pcp.add_parser("hom", help="Hom group of two modules")
    pcp_h.add_argument("--ring", required=True, help=ring_help)
    pcp_h.add_argument("--source", required=True, help=module_help)
    pcp_h.add_argument("--target", required=True, help=module_help)
    pcp_h.add_argument("--side", choices=["left", "right"], default="left")
    pcp_h.set_defaults(func=compute_hom)

    pcp_t = pcp.add_parser("tensor", help="tensor product N ⊗_R M")
    pcp_t.add_argument("--ring", required=True, help=ring_help)
    pcp_t.add_argument("--right", required=True, help=module_help)
    pcp_t.add_argument("--left", required=True, help=module_help)
    pcp_t.set_defaults(func=compute_tensor)

    pcp_r = pcp.add_parser("rker", help="r-extension of N at M")
    pcp_r.add_argument("--ring", required=True, help=ring_help)
    pcp_r.add_argument("--right", required=True, help=module_help)
    pcp_r.add_argument("--left", required=True, help=module_help)
    pcp_r.set_defaults(func=compute_rker)

    pcp_d = pcp.add_parser("dualeval", help="dual evaluations over an algebra corpus")
    pcp_d.add_argument("--ring", required=True, help=ring_help)
    pcp_d.add_argument("--module", required=True, help=module_help)
    pcp_d.add_argument("--seed", type=int, default=0, metavar="K")
    pcp_d.set_defaults(func=compute_dualeval)

    # parsers for report commands
    parser_r = subparsers.add_parser("report", help="report commands")
    set_print_help_on_error(parser_r)
    prp = parser_r.add_subparsers(title="Report commands")

    prp_s = prp.add_parser("show", help="summarize a verification report")
    prp_s.add_argument("path", metavar="FILE")
    prp_s.add_argument("--csv", action="store_true", help="Show csv output.")
    prp_s.set_defaults(func=show_report)

    if len(sys.argv) == 1:
        parser.print_help(sys.stderr)
        sys.exit(1)

    args = parser.parse_args()

    try:
        args.func(args)
    except (InputError, ValidationError, CorpusFileError, EnumerationRefused) as e:
        print_fail("FAILED", e)
        sys.exit(2)
    except yaml.YAMLError as e:
        print_fail("FAILED to parse YAML", e)
        sys.exit(2)


if __name__ == "__main__":
    main()

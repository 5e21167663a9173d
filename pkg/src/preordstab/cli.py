"""Command-line front end.

Every construction command reads a document file (``-`` for stdin) and
prints its results as documents.  Exit status: 0 success, 1 law failure,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .preorder import PreorderError
from .pretorsion import DEFAULT_BOUND, canonical_ses, torsion_free_part, torsion_part, z_cokernel, z_kernel
from .stable import (
    compose_stable,
    kernel_preimage,
    normalize,
    preuniversal_decomposition,
    stable_cokernel,
    stable_kernel,
)
from .textio import (
    DocumentError,
    MapDocument,
    PreorderDocument,
    Workspace,
    map_document,
    preorder_document,
    serialize_documents,
    to_dot,
)

EXIT_OK, EXIT_LAW_FAILURE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> Workspace:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return Workspace.from_text(text)


def _class_labels(labels, proj, size) -> list[str]:
    groups = [[] for _ in range(size)]
    for i, c in enumerate(proj):
        groups[c].append(labels[i])
    return ["+".join(g) for g in groups]


def _sublabels(labels, incl_map) -> list[str]:
    return [labels[x] for x in incl_map]


def _emit(ws: Workspace, docs) -> str:
    """Serialize ``docs`` preceded by the input preorders their maps mention,
    so the output is itself a loadable workspace."""
    defined = {d.name for d in docs if isinstance(d, PreorderDocument)}
    needed = []
    for d in docs:
        if isinstance(d, MapDocument):
            for name in (d.source, d.target):
                if name not in defined and name not in needed:
                    needed.append(name)
    return serialize_documents([ws.preorder_doc(n) for n in needed] + list(docs))


def _torsion(ws: Workspace, args):
    doc = ws.preorder_doc(args.name)
    t, i = torsion_part(doc.to_preorder())
    tdoc = preorder_document(t, f"{doc.name}_torsion", doc.labels)
    return [tdoc, map_document(i, "i", tdoc, doc)]


def _free(ws: Workspace, args):
    doc = ws.preorder_doc(args.name)
    fr, p = torsion_free_part(doc.to_preorder())
    fdoc = preorder_document(fr, f"{doc.name}_free", _class_labels(doc.labels, p.map, fr.size))
    return [fdoc, map_document(p, "p", doc, fdoc)]


def _ses(ws: Workspace, args):
    doc = ws.preorder_doc(args.name)
    s = canonical_ses(doc.to_preorder())
    tdoc = preorder_document(s.left.dom, f"{doc.name}_torsion", doc.labels)
    fr = s.right.cod
    fdoc = preorder_document(fr, f"{doc.name}_free", _class_labels(doc.labels, s.right.map, fr.size))
    return [tdoc, fdoc, map_document(s.left, "i", tdoc, doc), map_document(s.right, "p", doc, fdoc)]


def _map_docs(ws: Workspace, name):
    mdoc = ws.map_doc(name)
    return mdoc, ws.preorder_doc(mdoc.source), ws.preorder_doc(mdoc.target)


def _zker(ws: Workspace, args):
    mdoc, src, _ = _map_docs(ws, args.map)
    k, eps = z_kernel(ws.monotone_map(mdoc.name))
    kdoc = preorder_document(k, f"{mdoc.name}_zker", src.labels)
    return [kdoc, map_document(eps, "eps", kdoc, src)]


def _zcoker(ws: Workspace, args):
    mdoc, _, dst = _map_docs(ws, args.map)
    q_obj, q = z_cokernel(ws.monotone_map(mdoc.name))
    qdoc = preorder_document(q_obj, f"{mdoc.name}_zcoker", _class_labels(dst.labels, q.map, q_obj.size))
    return [qdoc, map_document(q, "q", dst, qdoc)]


def _snormal(ws: Workspace, args):
    mdoc, src, dst = _map_docs(ws, args.map)
    m = normalize(ws.partial_map(mdoc.name))
    return [map_document(m, f"{mdoc.name}_normal", src, dst)]


def _scompose(ws: Workspace, args):
    if len(args.map or []) != 2:
        raise UsageError("scompose needs exactly two --map options, first applied first")
    first, second = args.map
    d1, src, _ = _map_docs(ws, first)
    d2, _, dst = _map_docs(ws, second)
    if d1.target != d2.source:
        raise UsageError(f"{second} does not start where {first} ends")
    m = compose_stable(normalize(ws.partial_map(second)), normalize(ws.partial_map(first)))
    return [map_document(m, f"{second}_after_{first}", src, dst)]


def _sker(ws: Workspace, args):
    mdoc, src, _ = _map_docs(ws, args.map)
    m = normalize(ws.partial_map(mdoc.name))
    pre = kernel_preimage(m)
    k_obj, k = stable_kernel(m)
    kdoc = preorder_document(k_obj, f"{mdoc.name}_ker", _sublabels(src.labels, pre.map))
    return [kdoc, map_document(k, "k", kdoc, src)]


def _scoker(ws: Workspace, args):
    mdoc, _, dst = _map_docs(ws, args.map)
    m = normalize(ws.partial_map(mdoc.name))
    q_obj, q = stable_cokernel(m)
    # the Z-cokernel of the kept part names the classes of the target
    _, qz = z_cokernel(m.as_partial().restriction())
    labels = _class_labels(dst.labels, qz.map, q_obj.size)
    qdoc = preorder_document(q_obj, f"{mdoc.name}_coker", labels)
    return [qdoc, map_document(q, "q", dst, qdoc)]


def _sdecomp(ws: Workspace, args):
    if not (args.left and args.right):
        raise UsageError("sdecomp needs --left and --right")
    mdoc, src, dst = _map_docs(ws, args.map)
    left_doc, right_doc = ws.preorder_doc(args.left), ws.preorder_doc(args.right)
    m = normalize(ws.partial_map(mdoc.name))
    try:
        split = preuniversal_decomposition(m, left_doc.to_preorder(), right_doc.to_preorder())
    except PreorderError as exc:
        raise UsageError(str(exc)) from None
    out = []
    for tag, sub, block_doc, piece in (
        ("first", split.first, left_doc, split.first_map),
        ("second", split.second, right_doc, split.second_map),
    ):
        obj, incl = sub.induced()
        sdoc = preorder_document(obj, f"{mdoc.name}_{tag}", _sublabels(src.labels, incl.map))
        out += [sdoc, map_document(piece, f"{mdoc.name}_{tag}_map", sdoc, block_doc)]
    return out


def _dot(ws: Workspace, args):
    doc = ws.preorder_doc(args.name)
    return to_dot(doc.to_preorder(), doc.name, list(doc.labels), full=args.full)


def _laws(args) -> int:
    from .laws.suite import LawConfig, replay, run_law_suite

    if args.replay:
        try:
            with open(args.replay, encoding="utf-8") as fh:
                payload = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot load replay payload: {exc}") from None
        try:
            holds = replay(payload)
        except KeyError as exc:
            raise UsageError(f"unknown law {exc}") from None
        print(f"replay {payload['law']}: {'PASS' if holds else 'FAIL'}")
        return EXIT_OK if holds else EXIT_LAW_FAILURE
    try:
        config = LawConfig(
            seed=args.seed,
            max_object_size=args.max_size,
            bound=args.bound,
            iterations=args.iters,
            laws=tuple(args.law or ()),
        )
        report = run_law_suite(config)
    except (ValueError, KeyError) as exc:
        raise UsageError(str(exc).strip("'\"")) from None
    sys.stdout.write(report.format(timing=args.timing))
    return EXIT_OK if report.ok else EXIT_LAW_FAILURE


COMMANDS = {
    "torsion": (_torsion, "torsion part of a preorder"),
    "free": (_free, "torsion-free part (condensation) of a preorder"),
    "ses": (_ses, "canonical short exact sequence of a preorder"),
    "zker": (_zker, "Z-kernel of a total map"),
    "zcoker": (_zcoker, "Z-cokernel of a total map"),
    "snormal": (_snormal, "normal form of a partial map in the stable category"),
    "scompose": (_scompose, "stable composite of two maps"),
    "sker": (_sker, "kernel in the stable category"),
    "scoker": (_scoker, "cokernel in the stable category"),
    "sdecomp": (_sdecomp, "split a map into a coproduct along its two target summands"),
    "dot": (_dot, "DOT digraph of a preorder"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="preordstab", description="Preorders, pretorsion theories and the stable category.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="document file, or - for stdin")
        if name in ("torsion", "free", "ses", "dot"):
            p.add_argument("--name", help="preorder to use (default: the first)")
        else:
            p.add_argument("--map", action="append", help="map to use (default: the first)")
        if name == "sdecomp":
            p.add_argument("--left", help="first summand of the target")
            p.add_argument("--right", help="second summand of the target")
        if name == "dot":
            p.add_argument("--full", action="store_true", help="emit every strict pair, not just covers")
    p = sub.add_parser("laws", help="run the law suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-size", type=int, default=4)
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    p.add_argument("--iters", type=int, default=200)
    p.add_argument("--law", action="append", help="restrict to this law id (repeatable)")
    p.add_argument("--replay", help="JSON counterexample payload to re-run")
    p.add_argument("--timing", action="store_true", help="include per-law timings")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "laws":
            return _laws(args)
        handler, _ = COMMANDS[args.command]
        if args.command not in ("torsion", "free", "ses", "dot", "scompose") and args.map:
            if len(args.map) > 1:
                raise UsageError(f"{args.command} takes one --map")
            args.map = args.map[0]
        elif args.command not in ("torsion", "free", "ses", "dot", "scompose"):
            args.map = None
        ws = _read(args.file)
        result = handler(ws, args)
        sys.stdout.write(result if isinstance(result, str) else _emit(ws, result))
        return EXIT_OK
    except UsageError as exc:
        print(f"preordstab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DocumentError, PreorderError) as exc:
        print(f"preordstab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

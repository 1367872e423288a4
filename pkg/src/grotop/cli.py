"""Command-line client for the grotop service.

Every subcommand marshals its arguments into a service request and renders
the JSON response; by default requests run against an in-process instance
of the application, `--server URL` targets a remote one.

Exit codes: 0 success, 1 property violation (failed round trip, divergence,
non-spectral subject, failed inequality), 2 input error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from pathlib import Path
from typing import Optional

import httpx

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

_BUDGET_KINDS = {"BudgetExceeded"}


class ServiceClient:
    def __init__(self, server: Optional[str] = None):
        self.server = server

    def request(self, method: str, path: str, payload: Optional[dict] = None):
        if self.server:
            with httpx.Client(base_url=self.server, timeout=600.0) as client:
                response = client.request(method, path, json=payload)
        else:
            response = self._in_process(method, path, payload)
        return response.status_code, response.json()

    def _in_process(self, method: str, path: str, payload: Optional[dict]):
        from .service import create_app

        async def go():
            transport = httpx.ASGITransport(app=create_app())
            async with httpx.AsyncClient(
                transport=transport, base_url="http://grotop.local", timeout=600.0
            ) as client:
                return await client.request(method, path, json=payload)

        return asyncio.run(go())

    def post(self, path: str, payload: dict):
        return self.request("POST", path, payload)

    def get(self, path: str):
        return self.request("GET", path)


def _fail(status: int, body: dict) -> int:
    detail = body.get("detail")
    if isinstance(detail, dict) and "kind" in detail:
        print(f"error [{detail['kind']}]: {detail['message']}", file=sys.stderr)
        return EXIT_BUDGET if detail["kind"] in _BUDGET_KINDS else EXIT_INPUT
    print(f"error [{status}]: {json.dumps(detail)}", file=sys.stderr)
    return EXIT_INPUT


def _poset_payload(path: str) -> dict:
    text = Path(path).read_text(encoding="utf-8")
    return {"text": text}


def _subject_payload(args) -> dict:
    if getattr(args, "family", None):
        return {"family": args.family}
    if getattr(args, "file", None):
        return {"poset": _poset_payload(args.file)}
    raise SystemExit("either a poset file or --family is required")


def _split_list(raw: Optional[str]) -> list[str]:
    if not raw:
        return []
    return [tok.strip() for tok in raw.split(",") if tok.strip()]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_parse(client: ServiceClient, args) -> int:
    status, body = client.post("/v1/parse", {"poset": _poset_payload(args.file)})
    if status != 200:
        return _fail(status, body)
    print("elements:", " ".join(body["elements"]))
    for a, b in body["relations"]:
        print(f"{a} < {b}")
    return EXIT_OK


def cmd_enumerate_gt(client: ServiceClient, args) -> int:
    payload = {"poset": _poset_payload(args.file), "limit": args.limit}
    status, body = client.post("/v1/topologies", payload)
    if status != 200:
        return _fail(status, body)
    print(f"{body['count']} Grothendieck topologies")
    for i, topo in enumerate(body["topologies"]):
        print(f"-- topology {i}")
        for element, sieve_list in topo.items():
            rendered = " ".join(
                "{" + ",".join(s) + "}" for s in sieve_list
            )
            print(f"  {element}: {rendered}")
    return EXIT_OK


def cmd_correspond(client: ServiceClient, args) -> int:
    payload: dict = {"poset": _poset_payload(args.file)}
    if args.subset is not None:
        payload["subset"] = _split_list(args.subset)
    else:
        raw = args.topology
        if raw.lstrip().startswith("{"):
            payload["topology"] = json.loads(raw)
        else:
            payload["topology"] = json.loads(Path(raw).read_text(encoding="utf-8"))
    status, body = client.post("/v1/correspond", payload)
    if status != 200:
        return _fail(status, body)
    print("points:", " ".join(body["points"]) or "(empty)")
    print("topology:")
    for element, sieve_list in body["topology"].items():
        rendered = " ".join("{" + ",".join(s) + "}" for s in sieve_list)
        print(f"  {element}: {rendered}")
    rt = body["round_trip"]
    print(f"round trip ({rt['kind']}): {'equal' if rt['equal'] else 'NOT EQUAL'}")
    return EXIT_OK if rt["equal"] else EXIT_VIOLATION


def cmd_closure(client: ServiceClient, args) -> int:
    payload = {
        "subject": _subject_payload(args),
        "kind": args.topology,
        "points": _split_list(args.set),
        "sequence": args.seq,
        "candidates": _split_list(args.candidates),
        "budget": args.budget,
    }
    status, body = client.post("/v1/closure", payload)
    if status != 200:
        return _fail(status, body)
    print(f"{body['kind']} closure: {'closed' if body['outcome'] == 'closed' else 'grew'}")
    print("points:", " ".join(body["points"]) or "(empty)")
    if body["added"]:
        print("added:", " ".join(body["added"]))
    for note in body["notes"]:
        print("note:", note)
    return EXIT_OK


def cmd_converge(client: ServiceClient, args) -> int:
    payload = {
        "family": args.family,
        "seq": args.seq,
        "limit": args.limit,
        "test_elements": _split_list(args.test_elems) or None,
        "budget": args.budget,
    }
    status, body = client.post("/v1/converge", payload)
    if status != 200:
        return _fail(status, body)
    print("outcome:", body["outcome"])
    if body["stabilization"]:
        for name, n in body["stabilization"].items():
            print(f"  N({name}) = {n}")
    if body["diverges_at"] is not None:
        print(f"diverges at {body['diverges_at']}: {body['reason']}")
    elif body["reason"]:
        print("reason:", body["reason"])
    if body["outcome"] == "converges":
        return EXIT_OK
    return EXIT_VIOLATION if body["outcome"] == "diverges" else EXIT_BUDGET


def cmd_spectral(client: ServiceClient, args) -> int:
    payload = {"subject": _subject_payload(args), "levels": args.levels}
    status, body = client.post("/v1/spectral", payload)
    if status != 200:
        return _fail(status, body)
    print("outcome:", body["outcome"])
    if body["dominating"]:
        print("dominating:", " ".join(body["dominating"]))
    if body["escape_prefix"]:
        print("escape chain:", " ".join(body["escape_prefix"]), "...")
    if body["detail"]:
        print(body["detail"])
    if body["outcome"] == "spectral":
        return EXIT_OK
    return EXIT_VIOLATION if body["outcome"] == "not-spectral" else EXIT_BUDGET


def cmd_count(client: ServiceClient, args) -> int:
    payload = {"poset": _poset_payload(args.file), "gt_mode": args.gt}
    status, body = client.post("/v1/count", payload)
    if status != 200:
        return _fail(status, body)
    if args.json:
        print(json.dumps(body, indent=2, sort_keys=True))
    else:
        width = max(len(str(body[k])) for k in ("x", "cl", "coh", "ep", "gt"))
        for key in ("x", "cl", "coh", "ep", "gt"):
            print(f"{key:<4} {body[key]:>{width}}  [{body['methods'][key]}]")
        for name, why in body["not_computed"].items():
            print(f"{name}: not computed ({why})")
        for check in body["inequalities"]["checks"]:
            mark = "ok " if check["ok"] else "FAIL"
            print(f"{mark} {check['name']}: {check['lhs']} <= {check['rhs']}")
        for name in body["inequalities"]["skipped"]:
            print(f"skip {name}")
    return EXIT_OK if body["inequalities"]["ok"] else EXIT_VIOLATION


def cmd_catalog(client: ServiceClient, args) -> int:
    if args.action == "list":
        status, body = client.get("/v1/catalog")
        if status != 200:
            return _fail(status, body)
        for fam in body["families"]:
            print(f"{fam['selector']:<28} {fam['description']}")
        return EXIT_OK
    payload = {"family": args.family, "level": args.level}
    status, body = client.post("/v1/catalog/truncate", payload)
    if status != 200:
        return _fail(status, body)
    print(json.dumps(body["poset"], sort_keys=True))
    return EXIT_OK


def cmd_serve(_: ServiceClient, args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grotop",
        description="Grothendieck topologies on posets, at desk scale.",
    )
    parser.add_argument(
        "--server",
        default=None,
        help="URL of a running grotop service (default: run in-process)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="validate and echo a poset file")
    p.add_argument("file")
    p.set_defaults(fn=cmd_parse)

    p = sub.add_parser("enumerate-gt", help="list all Grothendieck topologies")
    p.add_argument("file")
    p.add_argument("--limit", type=int, default=2**20)
    p.set_defaults(fn=cmd_enumerate_gt)

    p = sub.add_parser("correspond", help="apply the subset/topology maps and round-trip")
    p.add_argument("file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--subset", help="comma list of points, e.g. pt:a,pt:b")
    group.add_argument("--topology", help="topology JSON (inline or a file path)")
    p.set_defaults(fn=cmd_correspond)

    p = sub.add_parser("closure", help="close a point set in a chosen topology")
    p.add_argument("file", nargs="?", default=None)
    p.add_argument("--family", default=None)
    p.add_argument(
        "--topology", required=True, choices=["scott", "patch", "strong"]
    )
    p.add_argument("--set", default="", help="comma list of points")
    p.add_argument("--seq", default=None, help="sequence rule describing more points")
    p.add_argument("--candidates", default="", help="candidate limit points")
    p.add_argument("--budget", type=int, default=64)
    p.set_defaults(fn=cmd_closure)

    p = sub.add_parser("converge", help="pointwise convergence of a sequence")
    p.add_argument("--family", required=True)
    p.add_argument("--seq", required=True)
    p.add_argument("--limit", required=True)
    p.add_argument("--test-elems", default="", help="comma list of test elements")
    p.add_argument("--budget", type=int, default=10_000)
    p.set_defaults(fn=cmd_converge)

    p = sub.add_parser("spectral", help="spectrality verdict with certificate")
    p.add_argument("file", nargs="?", default=None)
    p.add_argument("--family", default=None)
    p.add_argument("--levels", type=int, default=64)
    p.set_defaults(fn=cmd_spectral)

    p = sub.add_parser("count", help="counting table and inequality checks")
    p.add_argument("file")
    p.add_argument("--gt", default="auto", choices=["auto", "enumerate", "formula"])
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_count)

    p = sub.add_parser("catalog", help="list families or materialize a truncation")
    catalog_sub = p.add_subparsers(dest="action", required=True)
    pl = catalog_sub.add_parser("list")
    pl.set_defaults(fn=cmd_catalog, action="list")
    pt = catalog_sub.add_parser("truncate")
    pt.add_argument("family")
    pt.add_argument("level", type=int)
    pt.set_defaults(fn=cmd_catalog, action="truncate")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    client = ServiceClient(args.server)
    try:
        return args.fn(client, args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except httpx.HTTPError as exc:
        print(f"error: service unreachable: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

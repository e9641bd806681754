"""Batch front end.

Every subcommand posts one request to the service and maps the verdict to
an exit code: 0 pass, 1 check failure, 2 usage error, 3 inconclusive
(budget exhausted). By default the service runs in-process; --server
points the same client at a running instance instead.
"""
from __future__ import annotations

import argparse
import json
import re
import sys

EXIT = {"pass": 0, "fail": 1, "inconclusive": 3}

# subcommand -> request fields, in flag order
_FIELDS = {
    "realization": ("name", "p", "verify"),
    "ope": ("space", "p", "left", "right"),
    "screen": ("name", "p", "state"),
    "kernel": ("p", "module", "screenings", "max_conf", "window"),
    "omega": ("p", "r", "s", "b", "window", "classify", "sweep", "pmax"),
    "char": ("kind", "p", "r", "s", "n", "order", "window"),
    "check": ("identity", "p", "order"),
    "c2": ("p", "check"),
    "qgroup": ("variant", "p", "check", "max_steps"),
    "suite": ("profile", "fault"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", choices=("json", "text"), default="json")
    common.add_argument("--server", default=None,
                        help="base URL of a running service; "
                             "default runs in-process")

    parser = argparse.ArgumentParser(
        prog="voa-forge",
        description="exact free-field realization and character checks")
    sub = parser.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("realization", parents=[common],
                        help="build a realization and verify its relations")
    sp.add_argument("--name", required=True)
    sp.add_argument("--p", type=int, default=1)
    sp.add_argument("--verify", action=argparse.BooleanOptionalAction,
                    default=True)

    sp = sub.add_parser("ope", parents=[common],
                        help="singular part of a product of two states")
    sp.add_argument("--space", default="uva")
    sp.add_argument("--p", type=int, default=1)
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)

    sp = sub.add_parser("screen", parents=[common],
                        help="apply a screening charge to a state")
    sp.add_argument("--name", required=True)
    sp.add_argument("--p", type=int, default=1)
    sp.add_argument("--state", required=True)

    sp = sub.add_parser("kernel", parents=[common],
                        help="graded joint screening kernel vs character")
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--module", default=None)
    sp.add_argument("--screenings", default=None)
    sp.add_argument("--max-conf", type=int, default=3)
    sp.add_argument("--window", default="-6:6")

    sp = sub.add_parser("omega", parents=[common],
                        help="weight-window bracket checks on a line")
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--s", type=int, default=1)
    sp.add_argument("--b", default="0")
    sp.add_argument("--window", default="-5:5")
    sp.add_argument("--classify", action="store_true")
    sp.add_argument("--sweep", action="store_true")
    sp.add_argument("--pmax", type=int, default=3)

    sp = sub.add_parser("char", parents=[common],
                        help="exact truncated character series")
    sp.add_argument("--kind", required=True)
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--s", type=int, default=1)
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--order", type=int, default=5)
    sp.add_argument("--window", default="-6:6")

    sp = sub.add_parser("check", parents=[common],
                        help="character identity checks")
    sp.add_argument("--identity", required=True)
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--order", type=int, default=4)

    sp = sub.add_parser("c2", parents=[common],
                        help="graded-ring ideal, Casimir, and nilpotency")
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--check", default="ideal-equality")

    sp = sub.add_parser("qgroup", parents=[common],
                        help="quantum presentation relation checks")
    sp.add_argument("--variant", default="a")
    sp.add_argument("--p", type=int, default=3)
    sp.add_argument("--check", default="relations")
    sp.add_argument("--max-steps", type=int, default=None)

    sp = sub.add_parser("suite", parents=[common],
                        help="run the acceptance criteria")
    sp.add_argument("--profile", choices=("quick", "full"), default="quick")
    sp.add_argument("--fault", default=None)

    sp = sub.add_parser("serve", help="run the HTTP service")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8777)

    # windows ("-4:4") and rationals ("-1/2") are values, not flags
    matcher = re.compile(r"^-\d")
    parser._negative_number_matcher = matcher
    for child in sub.choices.values():
        child._negative_number_matcher = matcher
    return parser


def _client(server: str | None):
    if server:
        import httpx
        return httpx.Client(base_url=server, timeout=600.0)
    from fastapi.testclient import TestClient

    from .service import app
    return TestClient(app)


def _text_lines(body: dict) -> list[str]:
    rep = body.get("report", {})
    lines = [f"status: {body['status']}"]
    for t in rep.get("poles", ()):
        lines.append(f"  pole {t['pole']}: {t['state']}")
    series = rep.get("series")
    if isinstance(series, dict):
        for t in series.get("terms", ()):
            zbit = f" z^{t['z']}" if t.get("z", "0") != "0" else ""
            lines.append(f"  q^{t['q']}{zbit}: {t['c']}")
    for key in ("relations", "checks", "items", "results"):
        items = rep.get(key)
        if not isinstance(items, list):
            continue
        for item in items:
            if not isinstance(item, dict):
                continue
            mark = item.get("status")
            if mark is None:
                mark = "pass" if item.get("ok", True) else "fail"
            if "id" in item:
                label = f"{item['id']} {item.get('name', '')}".strip()
            else:
                label = next((str(item[f]) for f in
                              ("relation", "name", "check", "composite",
                               "identity", "p") if f in item), key)
            lines.append(f"  [{mark}] {label}")
    return lines


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.cmd == "serve":
        import uvicorn

        from .service import app
        uvicorn.run(app, host=args.host, port=args.port)
        return 0
    payload = {k: getattr(args, k) for k in _FIELDS[args.cmd]}
    try:
        with _client(args.server) as client:
            resp = client.post("/" + args.cmd, json=payload)
    except Exception as exc:  # unreachable server, malformed URL
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if resp.status_code >= 400:
        try:
            detail = resp.json().get("detail", resp.text)
        except Exception:
            detail = resp.text
        if not isinstance(detail, str):
            detail = json.dumps(detail)
        print(f"error: {detail}", file=sys.stderr)
        return 2
    body = resp.json()
    if args.out == "json":
        print(json.dumps(body, indent=2))
    else:
        print("\n".join(_text_lines(body)))
    return EXIT.get(body["status"], 2)


if __name__ == "__main__":
    sys.exit(main())

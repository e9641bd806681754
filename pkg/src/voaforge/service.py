"""HTTP face of the engine: one endpoint per batch subcommand.

Each endpoint wraps a library report function and returns a uniform
verdict envelope (status, ok, inconclusive, report). Every rational in
the emitted report is an exact string; floats never appear. Invalid
names, labels, or expressions come back as 422 with the library's own
error message.
"""
from __future__ import annotations

import functools
from fractions import Fraction

from fastapi import FastAPI, HTTPException

from . import c2 as c2lib
from . import chars, omega, qgroup, realize, screen, suite
from .exact import BiSeries, Cyclo, rat_str
from .fock import FockState, ope_singular
from .lattice import space
from .models import (C2Request, CharRequest, CheckRequest, KernelRequest,
                     OmegaRequest, OpeRequest, QGroupRequest,
                     RealizationRequest, ScreenRequest, SuiteRequest, Verdict)
from .parser import parse_state, print_state, print_vec

app = FastAPI(title="voa-forge", version="0.1.0")


# ---------------------------------------------------------------------------
# plumbing

def _clean(obj):
    """Exact scalars to strings, engine objects to their canonical text."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return rat_str(obj)
    if isinstance(obj, Cyclo):
        return repr(obj)
    if isinstance(obj, BiSeries):
        return obj.to_json()
    if isinstance(obj, FockState):
        return print_state(obj)
    if isinstance(obj, dict):
        return {_key(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return repr(obj)


def _key(k) -> str:
    return rat_str(k) if isinstance(k, Fraction) else str(k)


def _verdict(report: dict, ok: bool, inconclusive: bool = False,
             definite_fail: bool = False) -> Verdict:
    if ok:
        status = "inconclusive" if inconclusive else "pass"
    else:
        # a proven failure outranks an exhausted budget
        status = ("inconclusive" if inconclusive and not definite_fail
                  else "fail")
    return Verdict(status=status, ok=ok, inconclusive=inconclusive,
                   report=_clean(report))


def _any_fail(obj) -> bool:
    """Some sub-item records a definite failure, not just a budget stop."""
    if isinstance(obj, dict):
        if obj.get("status") == "fail":
            return True
        return any(_any_fail(v) for v in obj.values())
    if isinstance(obj, (list, tuple)):
        return any(_any_fail(v) for v in obj)
    return False


def _api(fn):
    @functools.wraps(fn)
    def inner(req):
        try:
            return fn(req)
        except (KeyError, ValueError) as exc:
            detail = exc.args[0] if exc.args else str(exc)
            raise HTTPException(status_code=422, detail=str(detail))
    return inner


def _window(text: str) -> tuple[int, int]:
    try:
        lo_s, hi_s = text.split(":")
        lo, hi = int(lo_s), int(hi_s)
    except ValueError:
        raise ValueError(f"window must look like '-6:6', got {text!r}")
    if lo > hi:
        raise ValueError(f"window must look like '-6:6', got {text!r}")
    return lo, hi


@app.get("/healthz")
def healthz() -> dict:
    return {"status": "ok", "service": "voa-forge"}


# ---------------------------------------------------------------------------
# realizations and the state calculus

@app.post("/realization", response_model=Verdict)
@_api
def realization_endpoint(req: RealizationRequest):
    real = realize.realization(req.name, req.p)
    if not req.verify:
        rep = {"name": real.name, "p": real.p, "kind": real.kind,
               "space": real.space.name, "expect": real.expect,
               "fields": {k: real.fields[k] for k in sorted(real.fields)}}
        return _verdict(rep, True)
    rep = realize.verify(real)
    return _verdict(rep, rep["ok"])


@app.post("/ope", response_model=Verdict)
@_api
def ope_endpoint(req: OpeRequest):
    sp = space(req.space, req.p)
    a = parse_state(req.left, sp)
    b = parse_state(req.right, sp)
    poles = ope_singular(a, b)
    rep = {"space": sp.name, "p": req.p,
           "left": print_state(a), "right": print_state(b),
           "poles": [{"pole": n, "state": print_state(poles[n])}
                     for n in sorted(poles, reverse=True)]}
    return _verdict(rep, True)


@app.post("/screen", response_model=Verdict)
@_api
def screen_endpoint(req: ScreenRequest):
    sp, charge = screen.screening_charge(req.name, req.p)
    state = parse_state(req.state, sp)
    out = screen.apply_screening(req.name, req.p, state)
    rep = {"name": req.name, "p": req.p, "space": sp.name,
           "charge": print_vec(charge, sp),
           "input": print_state(state), "output": print_state(out),
           "in_kernel": out.is_zero()}
    return _verdict(rep, True)


def _kernel_pair(p: int) -> tuple[str, str]:
    return ("s1", "s2") if p == 1 else ("qfms", "qminus")


def _module_label(p: int) -> str:
    return "Pi0 x V(A1)" if p == 1 else f"Pi0 x V(sqrt{p} A1)"


@app.post("/kernel", response_model=Verdict)
@_api
def kernel_endpoint(req: KernelRequest):
    lo, hi = _window(req.window)
    want = _kernel_pair(req.p)
    if req.screenings is not None:
        names = tuple(s.strip().lower()
                      for s in req.screenings.split(",") if s.strip())
        if sorted(names) != sorted(want):
            raise ValueError(f"joint kernel at p={req.p} is computed for "
                             f"screenings {','.join(want)}")
    label = _module_label(req.p)
    if req.module is not None and " ".join(req.module.split()) != label:
        raise ValueError(f"unknown module {req.module!r} at p={req.p}; "
                         f"have {label!r}")
    rep = screen.kernel_report(req.p, wmax=req.max_conf,
                               zmax=max(abs(lo), abs(hi)))
    rep["module"] = label
    return _verdict(rep, rep["ok"])


@app.post("/omega", response_model=Verdict)
@_api
def omega_endpoint(req: OmegaRequest):
    lo, hi = _window(req.window)
    win = max(abs(lo), abs(hi))
    if req.sweep:
        rep = omega.sweep(pmax=req.pmax, window=win)
        return _verdict(rep, rep["ok"])
    b = Fraction(req.b)
    rep = omega.bracket_check(req.p, req.r, req.s, b, window=win)
    if req.classify:
        rep["classification"] = omega.classify(req.p, req.r, req.s, b)
    return _verdict(rep, rep["ok"])


# ---------------------------------------------------------------------------
# characters

def _char_series(req: CharRequest) -> BiSeries:
    kind, p, order = req.kind, req.p, req.order
    if kind in ("weyl", "simple"):
        n = req.n
        if n is None:
            if req.r != 1:
                raise ValueError("weyl/simple characters form the r=1 "
                                 "family; give n directly or set r=1, s=n+1")
            n = req.s - 1
        fn = chars.ch_weyl_free if kind == "weyl" else chars.ch_weyl_simple
        return fn(p, n, order)
    if kind == "lplus":
        return chars.ch_lplus(p, req.r, req.s, order)
    if kind == "lplus-negative":
        return chars.ch_lplus_negative(p, req.r, req.s, order)
    if kind == "a-series":
        return chars.a_series(p, req.r, req.s, order)
    if kind == "b-series":
        return chars.b_series(p, req.r, req.s, order)
    if kind == "b-minus-series":
        return chars.b_minus_series(p, req.r, req.s, order)
    if kind == "ft":
        return chars.ch_ft(p, order)
    if kind == "fock-u":
        return chars.ch_fock_u(_require_n(req), order)
    if kind == "m":
        return chars.ch_m(_require_n(req), order)
    if kind == "betagamma":
        return chars.ch_betagamma(order)
    raise ValueError(f"unknown character kind {req.kind!r}")


def _require_n(req: CharRequest) -> int:
    if req.n is None:
        raise ValueError(f"character kind {req.kind!r} needs n")
    return req.n


@app.post("/char", response_model=Verdict)
@_api
def char_endpoint(req: CharRequest):
    lo, hi = _window(req.window)
    series = _char_series(req).clip_z(lo, hi)
    rep = {"kind": req.kind, "p": req.p, "order": req.order,
           "window": req.window, "series": series.to_json()}
    return _verdict(rep, True)


@app.post("/check", response_model=Verdict)
@_api
def check_endpoint(req: CheckRequest):
    if req.identity == "weyl-simple":
        checks = [chars.weyl_check(req.p, n, req.order) for n in (0, 1, 2)]
    elif req.identity == "x-decomposition":
        pairs = [(r, s) for r, s in ((1, 1), (2, 1), (1, 2))
                 if r <= req.p and s <= req.p]
        checks = [chars.decomposition_check(req.p, r, s, req.order)
                  for r, s in pairs]
    elif req.identity == "p1-decomposition":
        if req.p != 1:
            raise ValueError("p1-decomposition is defined at p = 1")
        checks = [chars.p1_decomposition_check(req.order)]
    else:
        raise ValueError(f"unknown identity {req.identity!r}")
    ok = all(c["ok"] for c in checks)
    rep = {"identity": req.identity, "p": req.p, "order": req.order,
           "ok": ok, "checks": checks}
    return _verdict(rep, ok)


# ---------------------------------------------------------------------------
# graded rings and presentations

_C2_CHECKS = {"ideal-equality": c2lib.ideal_report,
              "casimir": c2lib.casimir_report,
              "nilpotency": c2lib.derivation_report}


@app.post("/c2", response_model=Verdict)
@_api
def c2_endpoint(req: C2Request):
    if req.check not in _C2_CHECKS:
        raise ValueError(f"unknown check {req.check!r}; "
                         f"have {sorted(_C2_CHECKS)}")
    rep = _C2_CHECKS[req.check](req.p)
    rep["check"] = req.check
    return _verdict(rep, rep["ok"])


@app.post("/qgroup", response_model=Verdict)
@_api
def qgroup_endpoint(req: QGroupRequest):
    rep = qgroup.qgroup_report(req.variant, req.p, req.check,
                               max_steps=req.max_steps)
    inconclusive = bool(rep.get("inconclusive", False))
    return _verdict(rep, rep["ok"], inconclusive, _any_fail(rep))


@app.post("/suite", response_model=Verdict)
@_api
def suite_endpoint(req: SuiteRequest):
    rep = suite.run_suite(req.profile, req.fault)
    definite = any(not r["ok"] and not r["inconclusive"]
                   for r in rep["results"])
    return _verdict(rep, rep["ok"], rep["inconclusive"], definite)

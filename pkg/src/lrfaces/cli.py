"""Command line front end.

    lrfaces enumerate  --embedding diag:A1 --bound 2 --out c.json
    lrfaces delta      --embedding diag:A2 --face ""
    lrfaces kernel-dim --embedding sym2:3
    lrfaces stabilizer --embedding diag:A1 --face "" --actor D
    lrfaces flags-paper --embedding wedge2:4
    lrfaces polmom     --embedding diag:A1 --face "" --samples 3 --bound 2
    lrfaces check-all

Relative ``--out`` paths land in $LRFACES_OUTPUT_DIR when it is set.
Exit codes: 0 success, 1 usage error, 2 failed check.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import isotropy as iso
from .embed import EmbeddingError, build_embedding, desk_scale_catalog, parabolic_data
from .lrsemigroup import (
    SemigroupSample,
    branch,
    delta_all_faces,
    delta_direct,
    enumerate_semigroup,
    polmom_check,
)
from .rootsys import RootSystemError, enumerate_faces, parse_face

OUTPUT_ENV = "LRFACES_OUTPUT_DIR"
EXIT_OK, EXIT_USAGE, EXIT_CHECK = 0, 1, 2

DESK_BOUNDS = {
    "diag:A1": 4,
    "diag:A2": 3,
    "sym2:2": 4,
    "sym2:3": 2,
    "wedge2:4": 2,
    "tensor:2x2": 3,
}


class UsageError(Exception):
    pass


def desk_bound(name: str) -> int:
    if name in DESK_BOUNDS:
        return DESK_BOUNDS[name]
    r = build_embedding(name).ghat_rs.rank
    return 4 if r <= 2 else 3 if r <= 4 else 2


@dataclass
class RunConfig:
    embedding: str | None = None
    bound: int | None = None
    trials: int = iso.DEFAULT_TRIALS
    height: int = iso.DEFAULT_HEIGHT
    seed: int = 0
    out: str | None = None
    format: str = "json"

    def validate(self):
        if self.bound is not None and self.bound < 0:
            raise UsageError("--bound must be >= 0")
        if self.trials < 1:
            raise UsageError("--trials must be >= 1")
        if self.height < 1:
            raise UsageError("--height must be >= 1")


# -- output ---------------------------------------------------------------------------


def _out_path(out: str) -> Path:
    p = Path(out)
    base = os.environ.get(OUTPUT_ENV)
    if not p.is_absolute() and base:
        p = Path(base) / p
    return p


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n"


def _emit(cfg: RunConfig, payload: dict, text: str, csv_text: str | None = None):
    if cfg.format == "json":
        body = _dump(payload)
    elif cfg.format == "csv":
        if csv_text is None:
            raise UsageError("csv output is only available for enumerate")
        body = csv_text
    else:
        body = text if text.endswith("\n") else text + "\n"
    if cfg.out:
        p = _out_path(cfg.out)
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(body)
        print(f"wrote {p}")
    else:
        sys.stdout.write(body)


def _embedding(cfg: RunConfig):
    if not cfg.embedding:
        raise UsageError("--embedding is required")
    try:
        return build_embedding(cfg.embedding)
    except (EmbeddingError, RootSystemError) as exc:
        raise UsageError(str(exc)) from exc


def _face(e, text: str):
    try:
        return parse_face(e.g_rs, text)
    except (RootSystemError, ValueError) as exc:
        raise UsageError(f"bad face spec {text!r}: {exc}") from exc


def _bound(cfg: RunConfig, e) -> int:
    return desk_bound(e.name) if cfg.bound is None else cfg.bound


# -- commands --------------------------------------------------------------------------


def cmd_enumerate(cfg: RunConfig) -> int:
    e = _embedding(cfg)
    s = enumerate_semigroup(e, _bound(cfg, e))
    text = f"{e.name} bound {s.bound}: {len(s.points)} points, dim C = {s.dim}, saturated = {s.saturated}"
    _emit(cfg, s.to_json(), text, s.to_csv())
    return EXIT_OK


def cmd_delta(cfg: RunConfig, face_text: str) -> int:
    e = _embedding(cfg)
    f = _face(e, face_text)
    s = enumerate_semigroup(e, _bound(cfg, e))
    d = delta_direct(s, f)
    t = iso.delta_theoretical(e, f, cfg.trials, cfg.seed, cfg.height)
    payload = {
        "embedding": e.name,
        "face": f.label(),
        "bound": s.bound,
        "direct": d.to_json(),
        "theoretical": t.to_json(),
    }
    text = (
        f"{e.name} face {f.label()}: direct {d.delta}  theoretical {t.value}  "
        f"(bound {s.bound}, saturated {s.saturated})"
    )
    if d.warning:
        text += f"\nwarning: {d.warning}"
    _emit(cfg, payload, text)
    return EXIT_OK


def cmd_kernel_dim(cfg: RunConfig, rank_: int | None, weights: str | None) -> int:
    if weights is not None or rank_ is not None:
        if rank_ is None:
            raise UsageError("--rank is required with --weights")
        ws = []
        for chunk in (weights or "").split(";"):
            chunk = chunk.strip()
            if chunk:
                try:
                    ws.append(tuple(int(x) for x in chunk.split(",")))
                except ValueError as exc:
                    raise UsageError(f"bad weight {chunk!r}") from exc
        try:
            k = iso.torus_kernel_dim(rank_, ws)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        _emit(cfg, {"rank": rank_, "weights": [list(w) for w in ws], "kernel_dim": k}, f"kernel dim {k}")
        return EXIT_OK
    e = _embedding(cfg)
    k = iso.dim_c_dual(e)
    pred = e.g_rs.rank + e.ghat_rs.rank - k
    payload = {"embedding": e.name, "dim_c_dual": k, "predicted_dim_C": pred}
    _emit(cfg, payload, f"{e.name}: dim C^dual = {k}, predicted dim C = {pred}")
    return EXIT_OK


def cmd_stabilizer(cfg: RunConfig, face_text: str, actor: str) -> int:
    e = _embedding(cfg)
    f = _face(e, face_text)
    r = iso.generic_stabilizer(e, f, actor, cfg.trials, cfg.seed, cfg.height)
    payload = {
        "embedding": e.name,
        "face": f.label(),
        "actor": actor,
        "trials": cfg.trials,
        "dim": r.dim,
        "reductive_dim": r.reductive_dim,
        "trial_dims": r.trial_dims,
        "point": r.point_description,
        "basis": [m.to_json() for m in r.basis],
    }
    _emit(cfg, payload, f"{e.name} face {f.label()} actor {actor}: dim {r.dim}, reductive {r.reductive_dim}")
    return EXIT_OK


def cmd_explicit_flags(cfg: RunConfig) -> int:
    e = _embedding(cfg)
    pf = iso.explicit_flag(e)
    payload = {"embedding": e.name}
    lines = []
    ok = True
    if pf is None:
        payload["explicit_flag"] = None
        lines.append(f"{e.name}: no explicit flag in the catalog")
    else:
        st = iso.flag_stabilizer(e, pf, "derived", dual=True)
        payload["explicit_flag"] = {"dims": list(pf.dims), "stabilizer_dim": st.dim, "flag": pf.to_json()}
        lines.append(f"{e.name}: explicit dual flag dims {pf.dims}, [G,G]-stabilizer dim {st.dim}")
        ok = st.dim == 0
    full = iso.all_faces_full_check(e, cfg.trials, cfg.seed, cfg.height)
    payload["all_faces_full"] = full.to_json()
    lines.append(f"all faces full: {full.result} ({full.witness_source})")
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_CHECK


def cmd_polmom(cfg: RunConfig, face_text: str, samples: int, nmax: int) -> int:
    e = _embedding(cfg)
    f = _face(e, face_text)
    b = _bound(cfg, e)
    if b < 1:
        raise UsageError("polmom needs --bound >= 1")
    r = polmom_check(e, f, samples, b, nmax)
    lines = [f"{e.name} face {f.label()} hypotheses {r.hypotheses}"]
    for c in r.checks:
        lines.append(
            f"  nuhat {c.nuhat}: lhs {c.lhs} rhs {c.rhs} window {c.in_window} interior {c.interior}"
        )
    _emit(cfg, r.to_json(), "\n".join(lines))
    return EXIT_OK if r.ok else EXIT_CHECK


# -- the full suite ----------------------------------------------------------------------


def verify_sample(s: SemigroupSample) -> list[str]:
    """Recompute every branching fiber of a stored sample; return the discrepancies."""
    e = build_embedding(s.embedding)
    stored: dict = {}
    for p in s.points:
        stored.setdefault(p.nuhat, {})[p.mu] = p.mult
    problems = []
    for nuhat, got in sorted(stored.items()):
        want = branch(e, nuhat)
        if got != want:
            problems.append(f"fiber {list(nuhat)} differs from recomputation")
    return problems


def run_check_all(cfg: RunConfig, names=None, sample_file: str | None = None) -> tuple[dict, bool]:
    names = list(names or desk_scale_catalog())
    report = {"seed": cfg.seed, "trials": cfg.trials, "height": cfg.height, "embeddings": {}, "checks": []}
    ok = True

    def check(name: str, passed, detail=""):
        nonlocal ok
        status = "skip" if passed is None else "pass" if passed else "FAIL"
        if passed is False:
            ok = False
        report["checks"].append({"check": name, "status": status, "detail": detail})

    if sample_file:
        try:
            s = SemigroupSample.from_json(json.loads(_out_path(sample_file).read_text()))
            problems = verify_sample(s)
        except (OSError, ValueError, KeyError, TypeError, EmbeddingError) as exc:
            problems = [f"unreadable sample: {exc}"]
        check(f"sample integrity {sample_file}", not problems, "; ".join(problems))

    for name in names:
        e = build_embedding(name)
        b = desk_bound(name) if cfg.bound is None else cfg.bound
        s = enumerate_semigroup(e, b)
        rec = {"bound": b, "points": len(s.points), "dim_C": s.dim, "saturated": s.saturated}
        sat = s.saturated
        if not sat:
            rec["warning"] = "not saturated; saturation-dependent checks skipped"
        k = iso.dim_c_dual(e)
        rec["dim_c_dual"] = k
        check(f"{name}: dim C = rank T + rank That - dim C^dual",
              (s.dim == e.g_rs.rank + e.ghat_rs.rank - k) if sat else None,
              f"{s.dim} vs {e.g_rs.rank + e.ghat_rs.rank - k}")
        faces = [f for f, _ in enumerate_faces(e.g_rs)]
        direct = {f: d.delta for f, d in zip(faces, delta_all_faces(s))}
        theo = {}
        closed = True
        for f in faces:
            t = iso.delta_theoretical(e, f, cfg.trials, cfg.seed, cfg.height)
            theo[f] = t.value
            closed = closed and t.L.is_bracket_closed() and t.B_L.is_bracket_closed()
        rec["faces"] = {
            f.label(): {"direct": direct[f], "theoretical": theo[f]} for f in faces
        }
        check(f"{name}: stabilizers bracket-closed", closed)
        check(f"{name}: delta_direct >= 0", all(v >= 0 for v in direct.values()) if sat else None)
        pairs = [(f1, f2) for f1 in faces for f2 in faces if f1 <= f2 and f1 != f2]
        check(f"{name}: delta_direct monotone", all(direct[a] >= direct[b] for a, b in pairs) if sat else None)
        num = {f: v for f, v in theo.items() if isinstance(v, int)}
        check(f"{name}: delta_theoretical monotone",
              all(num[a] >= num[b] for a, b in pairs if a in num and b in num))
        unavailable = len(faces) - len(num)
        rec["unavailable_fraction"] = f"{unavailable}/{len(faces)}"
        check(f"{name}: delta_theoretical = delta_direct",
              all(num[f] == direct[f] for f in num) if sat else None,
              f"{unavailable} of {len(faces)} faces unavailable")
        if e.family == "diag":
            f0 = e.g_rs.zero_face()
            check(f"{name}: delta at {{0}} equals rank G",
                  direct[f0] == e.g_rs.rank if sat else None, f"{direct[f0]}")
        full = iso.all_faces_full_check(e, cfg.trials, cfg.seed, cfg.height)
        rec["all_faces_full_check"] = {"result": full.result, "witness": full.witness_source}
        if full.result:
            check(f"{name}: finite isotropy witness implies all faces full",
                  all(v == 0 for v in direct.values()) if sat else None)
        pf = iso.explicit_flag(e)
        if pf is not None:
            st = iso.flag_stabilizer(e, pf, "derived", dual=True)
            check(f"{name}: explicit flag has finite isotropy", st.dim == 0, f"dim {st.dim}")
        report["embeddings"][name] = rec

    if "diag:A1" in names and (cfg.bound is None or cfg.bound >= 1):
        e = build_embedding("diag:A1")
        b = desk_bound("diag:A1") if cfg.bound is None else cfg.bound
        pm = polmom_check(e, e.g_rs.zero_face(), 3, min(b, 2), 3)
        report["polmom_diag_A1"] = pm.to_json()
        check("diag:A1: moment polytope identity on the window", pm.ok)
    report["ok"] = ok
    return report, ok


def cmd_check_all(cfg: RunConfig, names, sample_file) -> int:
    report, ok = run_check_all(cfg, names, sample_file)
    lines = []
    for c in report["checks"]:
        lines.append(f"{c['status']:4}  {c['check']}" + (f"  [{c['detail']}]" if c["detail"] else ""))
    lines.append("ALL CHECKS PASSED" if ok else "SOME CHECKS FAILED")
    _emit(cfg, report, "\n".join(lines))
    return EXIT_OK if ok else EXIT_CHECK


# -- argument parsing ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--embedding", help="catalog name, e.g. diag:A2, sym2:3, wedge2:4, tensor:2x2")
    common.add_argument("--bound", type=int, help="enumeration bound on nuhat coordinates")
    common.add_argument("--trials", type=int, default=iso.DEFAULT_TRIALS)
    common.add_argument("--height", type=int, default=iso.DEFAULT_HEIGHT, help="sampling height h")
    common.add_argument("--seed", type=int, default=0, help="seed for all random sampling")
    common.add_argument("--out", help=f"output file (relative to ${OUTPUT_ENV} if set)")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")

    p = argparse.ArgumentParser(prog="lrfaces", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("enumerate", parents=[common], help="enumerate the semigroup")
    d = sub.add_parser("delta", parents=[common], help="face defect by both routes")
    d.add_argument("--face", required=True, help='1-based support, "" for {0}, or "full"')
    k = sub.add_parser("kernel-dim", parents=[common], help="torus kernel dimensions")
    k.add_argument("--rank", type=int)
    k.add_argument("--weights", help='weights separated by ";", coordinates by ","')
    s = sub.add_parser("stabilizer", parents=[common], help="generic stabilizer on the model variety")
    s.add_argument("--face", required=True)
    s.add_argument("--actor", choices=("L", "B_L", "D"), default="L")
    sub.add_parser("flags-paper", parents=[common], help="explicit flags with finite isotropy")
    pm = sub.add_parser("polmom", parents=[common], help="moment polytope slice identity")
    pm.add_argument("--face", required=True)
    pm.add_argument("--samples", type=int, default=3)
    pm.add_argument("--nmax", type=int, default=3)
    c = sub.add_parser("check-all", parents=[common], help="run every cross-check on the catalog")
    c.add_argument("--only", action="append", help="restrict to these embeddings (repeatable)")
    c.add_argument("--sample", help="stored sample JSON to verify against recomputation")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    cfg = RunConfig(args.embedding, args.bound, args.trials, args.height, args.seed, args.out, args.format)
    try:
        cfg.validate()
        if args.command == "enumerate":
            return cmd_enumerate(cfg)
        if args.command == "delta":
            return cmd_delta(cfg, args.face)
        if args.command == "kernel-dim":
            return cmd_kernel_dim(cfg, args.rank, args.weights)
        if args.command == "stabilizer":
            return cmd_stabilizer(cfg, args.face, args.actor)
        if args.command == "flags-paper":
            return cmd_explicit_flags(cfg)
        if args.command == "polmom":
            return cmd_polmom(cfg, args.face, args.samples, args.nmax)
        if args.command == "check-all":
            if args.embedding:
                raise UsageError("check-all takes --only, not --embedding")
            names = args.only
            if names:
                for n in names:
                    _embedding(RunConfig(embedding=n))
            return cmd_check_all(cfg, names, args.sample)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command line front end.

Input is a small line-oriented file::

    # comments start with '#'
    rank = 2
    map a -> aa
    map b -> a

``1`` denotes the empty word.  Exit codes: 0 all checks pass, 1 input
error, 2 a verification check failed, 3 letter budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import asdict, dataclass, field
from typing import Any

from . import folding, hnn, torus, words
from .endo import DEFAULT_LETTER_BUDGET, BudgetExceededError, Endomorphism

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_FAILED = 2
EXIT_BUDGET = 3

UNKNOWN = "UNKNOWN"

_RANK_RE = re.compile(r"^rank\s*=\s*(\S+)$")
_MAP_RE = re.compile(r"^map\s+(\S+)\s*->\s*(\S*)$")


class SpecError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass
class JobSpec:
    rank: int
    images: dict[str, str]
    verify: bool = True
    surjectivity: bool = True
    max_wit_len: int = torus.DEFAULT_WITNESS_LEN
    max_witnesses: int = torus.DEFAULT_WITNESS_COUNT
    budget: int = DEFAULT_LETTER_BUDGET
    dump_graphs: bool = False
    seed: int = 0

    def endomorphism(self) -> Endomorphism:
        names = words.letter_names(self.rank)
        return Endomorphism(
            self.rank, tuple(words.parse_word(self.images[n], self.rank) for n in names)
        )


def parse_spec(text: str, **flags: Any) -> JobSpec:
    rank = None
    rank_line = None
    raw: dict[str, tuple[str, int]] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if m := _RANK_RE.match(line):
            if rank is not None:
                raise SpecError("duplicate rank line", lineno)
            try:
                rank = int(m.group(1))
            except ValueError:
                raise SpecError(f"bad rank {m.group(1)!r}", lineno) from None
            rank_line = lineno
        elif m := _MAP_RE.match(line):
            letter, image = m.groups()
            if letter in raw:
                raise SpecError(f"duplicate map line for {letter!r}", lineno)
            raw[letter] = (image or "1", lineno)
        else:
            raise SpecError(f"cannot parse {line!r}", lineno)

    if rank is None:
        raise SpecError("missing 'rank = N' line")
    if not 1 <= rank <= words.MAX_TEXT_RANK:
        raise SpecError(f"rank must be in 1..{words.MAX_TEXT_RANK}", rank_line)
    names = words.letter_names(rank)
    for letter, (image, lineno) in raw.items():
        if letter not in names:
            raise SpecError(f"unknown generator {letter!r} for rank {rank}", lineno)
        try:
            words.parse_word(image, rank)
        except words.MalformedWordError as exc:
            raise SpecError(str(exc), lineno) from None
    missing = [n for n in names if n not in raw]
    if missing:
        raise SpecError(f"missing map line for {', '.join(missing)}")
    images = {n: raw[n][0] for n in names}
    return JobSpec(rank, images, **flags)


@dataclass
class Report:
    job: dict[str, Any]
    rank_sequence: list[int]
    k: int
    f1_rank: int
    f1_basis: list[str]
    psi: dict[str, str]
    mapping_torus_phi: str
    mapping_torus_psi: str
    checks: dict[str, Any]
    graphs: dict[str, str] | None = field(default=None)

    @property
    def passed(self) -> bool:
        c = self.checks
        if not c["injectivity_certificate"]:
            return False
        if c["relators_trivial"] is False or c["kernel_witnesses_checked"] is False:
            return False
        return c["surjectivity_ok"] is not False

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        if d["graphs"] is None:
            del d["graphs"]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Report":
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        c = self.checks
        mark = {True: "pass", False: "FAIL", None: "not run"}
        lines = [
            "endomorphism: "
            + ", ".join(f"{n} -> {w}" for n, w in self.job["images"].items()),
            "rank sequence: " + " ".join(map(str, self.rank_sequence)),
            f"k = {self.k}",
            f"F1 rank: {self.f1_rank}",
            "F1 basis: " + (", ".join(self.f1_basis) if self.f1_basis else "(empty)"),
            "psi: "
            + (", ".join(f"{x} -> {img or '1'}" for x, img in self.psi.items()) or "(rank 0)"),
            f"M(phi) = {self.mapping_torus_phi}",
            f"M(psi) = {self.mapping_torus_psi}",
            "checks:",
            f"  injectivity certificate: {mark[c['injectivity_certificate']]}",
            f"  relators trivial: {mark[c['relators_trivial']]}",
            f"  kernel witnesses: {c['kernel_witnesses_count']} checked, "
            f"{mark[c['kernel_witnesses_checked']]}",
        ]
        surj = c["surjectivity_witnesses"]
        if surj is None:
            lines.append("  surjectivity witnesses: not run")
        else:
            lines.append("  surjectivity witnesses:")
            basis_names = words.basis_names(self.f1_rank)
            for name, wit in zip(basis_names, surj):
                lines.append(f"    {name} = {wit or '1'}")
        if self.graphs:
            for name, dump in self.graphs.items():
                lines.append(f"graph {name}:")
                lines += ["  " + ln for ln in dump.splitlines()]
        return "\n".join(lines) + "\n"


def run(job: JobSpec) -> Report:
    phi = job.endomorphism()
    result = torus.injectivize(phi, budget=job.budget)
    m = result.m
    xnames = words.basis_names(m)
    ynames = words.basis_names(phi.rank, "y")
    psi_pres = hnn.present_mapping_torus(result.psi, xnames)

    checks: dict[str, Any] = {
        "injectivity_certificate": folding.rank(result.psi_image_graph) == m,
        "relators_trivial": None,
        "kernel_witnesses_checked": None,
        "kernel_witnesses_count": 0,
        "surjectivity_witnesses": None,
        "surjectivity_ok": None,
    }
    if job.verify:
        report = hnn.verify_isomorphism(
            phi,
            result,
            max_wit_len=job.max_wit_len,
            max_witnesses=job.max_witnesses,
            surjectivity=job.surjectivity,
            presentation=psi_pres,
        )
        checks["injectivity_certificate"] = report.injectivity_certificate
        checks["relators_trivial"] = report.relators_trivial
        checks["kernel_witnesses_checked"] = report.kernel_ok
        checks["kernel_witnesses_count"] = len(report.kernel_witnesses)
        if report.surjectivity_witnesses is not None:
            checks["surjectivity_witnesses"] = [
                UNKNOWN if w is None else words.format_tokens(w, ynames, empty="")
                for w in report.surjectivity_witnesses
            ]
            checks["surjectivity_ok"] = report.surjectivity_ok

    graphs = None
    if job.dump_graphs:
        graphs = {
            "f1": result.f1_basis.graph.dump(),
            "psi_image": result.psi_image_graph.dump(xnames),
        }

    return Report(
        job=asdict(job),
        rank_sequence=list(result.trace),
        k=result.k,
        f1_rank=m,
        f1_basis=[words.format_word(b, empty="") for b in result.f1_basis.basis],
        psi={
            x: words.format_tokens(img, xnames, empty="")
            for x, img in zip(xnames, result.psi.images)
        },
        mapping_torus_phi=str(hnn.present_mapping_torus(phi)),
        mapping_torus_psi=str(psi_pres),
        checks=checks,
        graphs=graphs,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mtorus",
        description="Replace a free group endomorphism by an injective one "
        "with an isomorphic mapping torus, and check the construction.",
    )
    parser.add_argument("spec", help="endomorphism file, or '-' for stdin")
    parser.add_argument("--json", action="store_true", help="emit a JSON report")
    parser.add_argument(
        "--verify",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="run the verification checks (default: on)",
    )
    parser.add_argument(
        "--no-surjectivity",
        dest="surjectivity",
        action="store_false",
        help="skip the surjectivity witness search",
    )
    parser.add_argument(
        "--max-wit-len",
        type=int,
        default=torus.DEFAULT_WITNESS_LEN,
        metavar="L",
        help="kernel witness search length (default: %(default)s)",
    )
    parser.add_argument(
        "--max-witnesses",
        type=int,
        default=torus.DEFAULT_WITNESS_COUNT,
        metavar="N",
        help="maximum kernel witnesses checked (default: %(default)s)",
    )
    parser.add_argument(
        "--budget",
        type=int,
        default=DEFAULT_LETTER_BUDGET,
        metavar="B",
        help="total-letter budget for image words (default: %(default)s)",
    )
    parser.add_argument(
        "--dump-graphs", action="store_true", help="include Stallings graph edge lists"
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.spec == "-":
            text = sys.stdin.read()
        else:
            with open(args.spec, encoding="utf-8") as fh:
                text = fh.read()
        job = parse_spec(
            text,
            verify=args.verify,
            surjectivity=args.surjectivity,
            max_wit_len=args.max_wit_len,
            max_witnesses=args.max_witnesses,
            budget=args.budget,
            dump_graphs=args.dump_graphs,
        )
    except (OSError, SpecError) as exc:
        print(f"mtorus: {exc}", file=sys.stderr)
        return EXIT_INPUT

    try:
        report = run(job)
    except BudgetExceededError as exc:
        print(f"mtorus: letter budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET

    sys.stdout.write(report.to_json() if args.json else report.to_text())
    return EXIT_OK if report.passed else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())

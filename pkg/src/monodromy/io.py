"""JSON files, digests, the bundled example corpus and run reports."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

EXIT_CODES = {"ok": 0, "violated": 1, "error": 2, "undetermined": 3}


def canonical_json(obj) -> str:
    """Sorted keys, two-space indent, UTF-8 friendly, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def digest(text: str | bytes) -> str:
    if isinstance(text, str):
        text = text.encode("utf-8")
    return hashlib.sha256(text).hexdigest()


def data_dir():
    return resources.files("monodromy") / "data"


def bundled_names() -> list[str]:
    manifest = json.loads((data_dir() / "manifest.json").read_text(encoding="utf-8"))
    return sorted(manifest["files"])


def read_input(path: str) -> tuple[dict | list, str, str]:
    """Load a JSON file; returns ``(object, sha256, resolved name)``.

    A path that does not exist but names a bundled example (``e1.json`` or
    ``examples/e1.json``) is read from the package data.
    """
    p = Path(path)
    if p.exists():
        raw = p.read_bytes()
        source = str(p)
    else:
        name = p.name
        candidate = data_dir() / name
        if name == "manifest.json" or not candidate.is_file():
            raise FileNotFoundError(f"no such file: {path}")
        raw = candidate.read_bytes()
        source = f"bundled:{name}"
    return json.loads(raw.decode("utf-8")), digest(raw), source


# ---------------------------------------------------------------------------
# Example corpus


def build_examples() -> dict[str, dict]:
    """The canonical example files, computed from their definitions."""
    from .braidmono import BraidedCurveSpec, BranchData
    from .factorizations import ConjugatedPower, Context, Factorization, Move, MovePath, hurwitz_move
    from .fukaya import conic_pencil_example
    from .groups import parse_braid

    def fibration(genus, base_points, classes):
        return {"genus": genus, "base_points": base_points,
                "twists": [{"separating": False, "class": list(c)} for c in classes]}

    def curve(degree, factors):
        qs = [ConjugatedPower(parse_braid(c, degree), b, e) for c, b, e in factors]
        return BraidedCurveSpec(degree, qs).to_json()

    examples: dict[str, dict] = {}
    examples["e1.json"] = fibration(1, 0, [(1, 0), (0, 1)] * 6)
    examples["cubic_pencil.json"] = fibration(1, 9, [(1, 0), (0, 1)] * 6)
    chain = [(1, 0, 0, 0), (0, 1, 0, 0), (-1, 0, 1, 0), (0, 0, 0, 1), (0, 0, 1, 0)]
    word = (chain + chain[::-1]) * 2
    examples["genus2_fibration.json"] = fibration(2, 0, word)
    examples["genus2_pencil.json"] = fibration(2, 12, word)

    sl2z = Context("sl2z")
    elliptic = Factorization(sl2z, tuple(sl2z.parse(x) for x in ["A", "B"] * 6), "identity")
    examples["elliptic_sl2z.json"] = elliptic.to_json()
    moved = hurwitz_move(elliptic, 1, 1)
    path = MovePath((Move("hurwitz", 1, 1),))
    examples["elliptic_path.json"] = {"moves": path.to_json(sl2z), "result": moved.to_json()}

    examples["conic.json"] = curve(2, [("", 1, 1), ("", 1, 1)])
    examples["conic_theta.json"] = BranchData.from_pairs(2, [(1, 2), (1, 2)]).to_json()
    examples["cuspidal_cubic.json"] = curve(3, [("", 1, 3), ("x1^-1", 2, 1), ("", 1, 1), ("", 2, 1)])
    examples["nodal_cubic.json"] = curve(3, [("", 1, 2), ("", 2, 1), ("", 1, 1), ("", 1, 1), ("", 2, 1)])
    examples["sextic.json"] = curve(6, [("", i, 1) for _ in range(6) for i in range(1, 6)])
    examples["sextic_theta.json"] = BranchData.from_pairs(2, [(1, 2)] * 6).to_json()
    examples["quartic_theta.json"] = BranchData.from_pairs(2, [(1, 2)] * 4).to_json()
    examples["conic_arrangement.json"] = conic_pencil_example().to_json()
    return examples


def write_corpus(target: Path) -> dict:
    """Write the corpus and ``manifest.json`` into ``target``; return the manifest."""
    target.mkdir(parents=True, exist_ok=True)
    files = {}
    for name, obj in sorted(build_examples().items()):
        text = canonical_json(obj)
        (target / name).write_text(text, encoding="utf-8", newline="\n")
        files[name] = digest(text)
    manifest = {"files": files}
    (target / "manifest.json").write_text(canonical_json(manifest), encoding="utf-8", newline="\n")
    return manifest


def verify_corpus(target) -> list[str]:
    """Names whose bytes disagree with the manifest digest."""
    manifest = json.loads((target / "manifest.json").read_text(encoding="utf-8"))
    return [name for name, h in sorted(manifest["files"].items())
            if digest((target / name).read_bytes()) != h]


# ---------------------------------------------------------------------------
# Reports


@dataclass
class Report:
    status: str
    payload: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)
    text: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.status not in EXIT_CODES:
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_json(self) -> dict:
        return {"status": self.status, "payload": self.payload, "provenance": self.provenance}

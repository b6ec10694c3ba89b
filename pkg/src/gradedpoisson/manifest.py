"""Chart manifests: a line-oriented key-value format for chart input.

A manifest names a chart, its coordinates and the two structure tensors:

    [chart] name=plane, dim=2, coords=x,y
    [metric]
    g.1.1=1
    g.2.2=1
    [symplectic]
    w.1.2=1
    [ltensor]
    L.1.2.2=0

Indices are 1-based coordinate positions. Metric entries fill in by
symmetry, symplectic ones by antisymmetry, compatibility-tensor ones by
antisymmetry in the last index pair; everything unspecified is zero.
Every diagnostic carries the offending line number. Structural
validation (symmetry, non-degeneracy, closedness of the symplectic
form) happens when the chart is built, with the same error surface the
rest of the package uses.
"""

from __future__ import annotations

from .exprparse import ExprError, parse_scalar_expr
from .geometry import ChartGeometry
from .scalars import coordinate_field

_SECTIONS = ("chart", "metric", "symplectic", "ltensor")


class ManifestError(ValueError):
    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


class ChartManifest:
    """Parsed manifest content, prior to chart construction."""

    def __init__(self):
        self.name = None
        self.dim = None
        self.coords = None
        self.kahler_expected = None
        self.metric_entries = []  # (i, j, expr_text, line)
        self.symplectic_entries = []
        self.l_entries = []  # (i, j, k, expr_text, line)

    def build(self) -> ChartGeometry:
        if self.name is None:
            raise ManifestError("missing [chart] name", 1)
        if self.coords is None:
            raise ManifestError("missing [chart] coords", 1)
        if self.dim is not None and self.dim != len(self.coords):
            raise ManifestError(
                f"dim={self.dim} but {len(self.coords)} coordinates given", 1
            )
        field = coordinate_field(self.coords)
        dim = field.dimension

        def parse_entry(text, line):
            try:
                return parse_scalar_expr(text, field)
            except ExprError as err:
                raise ManifestError(str(err), line) from None

        g = [[field.zero] * dim for _ in range(dim)]
        seen = {}
        for i, j, text, line in self.metric_entries:
            value = parse_entry(text, line)
            pair = (min(i, j), max(i, j))
            if pair in seen and seen[pair] != value:
                raise ManifestError(
                    f"metric entry ({i + 1},{j + 1}) conflicts with an earlier one", line
                )
            seen[pair] = value
            g[i][j] = value
            g[j][i] = value

        if not self.symplectic_entries:
            raise ManifestError("missing [symplectic] entries", 1)
        w = [[field.zero] * dim for _ in range(dim)]
        seen = {}
        for i, j, text, line in self.symplectic_entries:
            value = parse_entry(text, line)
            if i == j:
                if not value.is_zero:
                    raise ManifestError(
                        f"diagonal symplectic entry ({i + 1},{i + 1}) must be zero", line
                    )
                continue
            signed = value if i < j else -value
            pair = (min(i, j), max(i, j))
            if pair in seen and seen[pair] != signed:
                raise ManifestError(
                    f"symplectic entry ({i + 1},{j + 1}) conflicts with an earlier one", line
                )
            seen[pair] = signed
            w[i][j] = value
            w[j][i] = -value

        l_tensor = None
        if self.l_entries:
            l_tensor = [
                [[field.zero] * dim for _ in range(dim)] for _ in range(dim)
            ]
            for i, j, k, text, line in self.l_entries:
                value = parse_entry(text, line)
                if j == k:
                    if not value.is_zero:
                        raise ManifestError(
                            f"tensor entry ({i + 1},{j + 1},{k + 1}) must vanish "
                            "(antisymmetric slots)",
                            line,
                        )
                    continue
                l_tensor[i][j][k] = value
                l_tensor[i][k][j] = -value

        return ChartGeometry(
            self.name,
            self.coords,
            g,
            w,
            l_tensor=l_tensor,
            kahler_expected=self.kahler_expected,
        )


def _split_assignments(text: str, line: int):
    """Comma-split with re-attachment: a piece without '=' belongs to the
    value of the previous assignment (so coords=x,y parses whole)."""
    pieces = []
    for raw in text.split(","):
        raw = raw.strip()
        if not raw:
            continue
        if "=" in raw:
            pieces.append(raw)
        elif pieces:
            pieces[-1] = pieces[-1] + "," + raw
        else:
            raise ManifestError(f"expected key=value, got {raw!r}", line)
    out = []
    for piece in pieces:
        key, _, value = piece.partition("=")
        key = key.strip()
        value = value.strip()
        if not key or not value:
            raise ManifestError(f"expected key=value, got {piece!r}", line)
        out.append((key, value))
    return out


def _indices(key: str, prefix: str, count: int, dim, line: int):
    parts = key.split(".")
    if len(parts) != count + 1 or parts[0] != prefix:
        raise ManifestError(
            f"expected {prefix}.{'.'.join('i' * count)} style key, got {key!r}", line
        )
    try:
        idx = [int(p) for p in parts[1:]]
    except ValueError:
        raise ManifestError(f"non-integer index in {key!r}", line) from None
    for value in idx:
        if value < 1 or (dim is not None and value > dim):
            raise ManifestError(
                f"index {value} out of range 1..{dim} in {key!r}", line
            )
    return [value - 1 for value in idx]


def parse_manifest_document(text: str) -> ChartManifest:
    manifest = ChartManifest()
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            end = line.find("]")
            if end < 0:
                raise ManifestError("unterminated section header", lineno)
            name = line[1:end].strip()
            if name not in _SECTIONS:
                raise ManifestError(
                    f"unknown section [{name}]; expected one of "
                    + ", ".join(f"[{s}]" for s in _SECTIONS),
                    lineno,
                )
            section = name
            line = line[end + 1 :].strip()
            if not line:
                continue
        if section is None:
            raise ManifestError("content before any section header", lineno)
        for key, value in _split_assignments(line, lineno):
            _apply(manifest, section, key, value, lineno)
    return manifest


def _apply(manifest: ChartManifest, section: str, key: str, value: str, line: int):
    if section == "chart":
        if key == "name":
            manifest.name = value
        elif key == "dim":
            try:
                manifest.dim = int(value)
            except ValueError:
                raise ManifestError(f"dim must be an integer, got {value!r}", line) from None
        elif key == "coords":
            coords = tuple(c.strip() for c in value.split(",") if c.strip())
            if not coords:
                raise ManifestError("coords list is empty", line)
            for c in coords:
                if not c.isidentifier():
                    raise ManifestError(f"bad coordinate name {c!r}", line)
            if len(set(coords)) != len(coords):
                raise ManifestError("duplicate coordinate names", line)
            manifest.coords = coords
        elif key == "kahler-expected":
            lowered = value.lower()
            if lowered not in ("true", "false"):
                raise ManifestError(
                    f"kahler-expected must be true or false, got {value!r}", line
                )
            manifest.kahler_expected = lowered == "true"
        else:
            raise ManifestError(f"unknown [chart] key {key!r}", line)
        return
    dim = len(manifest.coords) if manifest.coords else manifest.dim
    if section == "metric":
        i, j = _indices(key, "g", 2, dim, line)
        manifest.metric_entries.append((i, j, value, line))
    elif section == "symplectic":
        i, j = _indices(key, "w", 2, dim, line)
        manifest.symplectic_entries.append((i, j, value, line))
    else:
        i, j, k = _indices(key, "L", 3, dim, line)
        manifest.l_entries.append((i, j, k, value, line))


def parse_manifest(text: str) -> ChartGeometry:
    return parse_manifest_document(text).build()

"""Command line interface.

Exit codes: 0 success or verification pass, 1 verification failure,
2 parse errors, guard violations and refused inputs.
"""

import csv
import io
import random
import shlex
import sys
from math import sqrt

import click

from .combinatorics import (RECORD_HEADER, ExactLanguage, WindowLanguage, bispecial_scan, complexity,
                            default_positions, multiplicity_records, rectangular_complexity)
from .exactreal import SlopeVector, SurdParseError, floor_of, ceil_of, parse_slope, parse_surd
from .lattice import GuardExceeded, Support, box, box_between, enumerate_connected_supports, unit, zero
from .pairs import (AsymptoticPair, ConstantConfig, OverrideConfig, check_flip, default_guard,
                    etale_consistency, project_pi, restrict_sublattice,
                    sturmian_pair, verify_indistinguishable)
from .sturmian import LOWER, UPPER, Patch, SturmianConfig, symbol_frequencies, window_lengths


class UsageFailure(click.ClickException):
    exit_code = 2


# parsing helpers


def parse_point(text):
    try:
        return tuple(int(c) for c in text.replace(" ", "").split(","))
    except ValueError:
        raise UsageFailure(f"bad point {text!r}")


def parse_box(text):
    """'-7:7,-7:7' -> (lo, hi)."""
    lo, hi = [], []
    for part in text.split(","):
        try:
            a, b = part.split(":")
            lo.append(int(a))
            hi.append(int(b))
        except ValueError:
            raise UsageFailure(f"bad box {text!r}; expected ranges like -7:7,-7:7")
        if lo[-1] > hi[-1]:
            raise UsageFailure(f"empty range {part!r}")
    return tuple(lo), tuple(hi)


def parse_shapes(text):
    out = []
    for tok in text.replace(";", " ").split():
        try:
            out.append(tuple(int(v) for v in tok.lower().split("x")))
        except ValueError:
            raise UsageFailure(f"bad shape {tok!r}; expected e.g. 2x3")
    return out


def load_slope(text, dim=None, assume_irrational=False):
    try:
        alpha = parse_slope(text, assume_irrational)
    except (SurdParseError, ValueError) as exc:
        raise UsageFailure(f"cannot parse slope: {exc}")
    if dim is not None and alpha.dim != dim:
        raise UsageFailure(f"slope has {alpha.dim} entries but -d is {dim}")
    if not alpha.usable():
        raise UsageFailure("slope is not totally irrational, " + alpha.certificate.describe(alpha.entries))
    return alpha


def centered_box(dim, radius):
    return (-radius,) * dim, (radius,) * dim


# pair files


def read_pair_file(text):
    """Parse X:, Y: and F: blocks plus optional background lines."""
    blocks, current, backgrounds = {}, None, []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("background:"):
            backgrounds.append(shlex.split(line[len("background:"):]))
            continue
        if line in ("X:", "Y:", "F:"):
            current = line[0]
            blocks[current] = []
            continue
        if current is None:
            raise ValueError(f"unexpected line {line!r} before a block header")
        blocks[current].append(line)
    for key in "XYF":
        if key not in blocks:
            raise ValueError(f"missing {key}: block")
    px, kx = Patch.from_text("\n".join(blocks["X"]))
    py, ky = Patch.from_text("\n".join(blocks["Y"]))
    F = Support.from_text("\n".join(blocks["F"]))
    d = px.support.dim
    if py.support.dim != d or F.dim != d:
        raise ValueError("blocks disagree on the dimension")
    k = max(kx, ky)
    bgs = []
    slope = None
    for fields in backgrounds:
        if len(fields) != 4 or fields[0] != "sturmian":
            raise ValueError("background line must read: background: sturmian <slope> <intercept> <side>")
        slope = parse_slope(fields[1])
        bgs.append(SturmianConfig(slope, parse_surd(fields[2]), fields[3]))
    if not bgs:
        bgs = [ConstantConfig(d, 0, tuple(range(k)))]
    bx = bgs[0]
    by = bgs[1] if len(bgs) > 1 else bgs[0]
    x = OverrideConfig(bx, px.as_dict())
    y = OverrideConfig(by, py.as_dict())
    return AsymptoticPair(x, y, F, certified=False, slope=slope)


def write_pair_text(x_patch, y_patch, F, alphabet_size, background=None):
    out = []
    if background:
        out.append("background: " + background)
    out.append("X:")
    out.append(x_patch.to_text(alphabet_size).rstrip())
    out.append("Y:")
    out.append(y_patch.to_text(alphabet_size).rstrip())
    out.append("F:")
    out.append(F.to_text().rstrip())
    return "\n".join(out) + "\n"


# svg


ISO = {0: (-sqrt(3) / 2, -0.5), 1: (sqrt(3) / 2, -0.5), 2: (0.0, 1.0)}
FILLS = {0: "#d8b365", 1: "#f5f5f5", 2: "#5ab4ac"}


def _proj(x):
    px = sum(x[j] * ISO[j][0] for j in range(3))
    py = sum(x[j] * ISO[j][1] for j in range(3))
    return px, -py


def rhombus_tiles(cfg, lo, hi):
    """Faces of the stepped surface, one per cell of the window.

    A cell n with symbol i becomes the unit face orthogonal to e_{i+1}.
    Returns a list of (n, symbol, base vertex in Z^3).
    """
    if cfg.dim != 2:
        raise UsageFailure("tilings are drawn for d = 2 only")
    order = cfg.partition.order  # coordinates by decreasing slope entry
    grid = cfg.window(lo, hi)
    tiles = []
    for a in range(lo[0], hi[0] + 1):
        for b in range(lo[1], hi[1] + 1):
            n = (a, b)
            s = int(grid[a - lo[0], b - lo[1]])
            n1, n2 = n[order[0] - 1], n[order[1] - 1]
            t = cfg.argument(n)
            k = n1 - floor_of(t) if cfg.side == LOWER else n1 - ceil_of(t) + 1
            x = (k - n1, k, k + n2)
            shift = [(0, 0, 0), (1, 0, 0), (1, 1, 0)][s]
            base = tuple(c - sh for c, sh in zip(x, shift))
            tiles.append((n, s, base))
    return tiles


def tiles_svg(tiles, scale=20.0):
    polys = []
    for n, s, base in tiles:
        dirs = [j for j in range(3) if j != s]
        e = [tuple(int(j == dd) for j in range(3)) for dd in dirs]
        corners = [base, tuple(b + u for b, u in zip(base, e[0])),
                   tuple(b + u + v for b, u, v in zip(base, e[0], e[1])), tuple(b + v for b, v in zip(base, e[1]))]
        polys.append((s, [_proj(c) for c in corners]))
    xs = [p[0] for _, pts in polys for p in pts] or [0]
    ys = [p[1] for _, pts in polys for p in pts] or [0]
    x0, y0 = min(xs), min(ys)
    w, h = (max(xs) - x0) * scale + 2, (max(ys) - y0) * scale + 2
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.2f}" height="{h:.2f}" '
           f'viewBox="0 0 {w:.2f} {h:.2f}">']
    for s, pts in polys:
        coords = " ".join(f"{(px - x0) * scale + 1:.3f},{(py - y0) * scale + 1:.3f}" for px, py in pts)
        out.append(f'<polygon points="{coords}" fill="{FILLS[s]}" stroke="#333" stroke-width="0.6"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _emit(text, out):
    if out in (None, "-"):
        click.echo(text, nl=False)
    else:
        with open(out, "w") as fh:
            fh.write(text)


# commands


@click.group()
def main():
    """Sturmian configurations and indistinguishable asymptotic pairs."""


@main.command()
@click.option("-d", "--dim", type=int, default=None)
@click.option("--alpha", required=True, help="comma separated surd literals")
@click.option("--intercept", default="0")
@click.option("--side", type=click.Choice([LOWER, UPPER]), default=LOWER)
@click.option("--box", "box_spec", default=None, help="ranges such as -7:7,-7:7")
@click.option("--assume-irrational", is_flag=True, help="accept slopes that fail the exact test")
@click.option("--grid", is_flag=True, help="print rows instead of the patch format")
@click.option("-o", "--out", default=None)
def generate(dim, alpha, intercept, side, box_spec, assume_irrational, grid, out):
    """Write a window of a Sturmian configuration."""
    slope = load_slope(alpha, dim, assume_irrational)
    try:
        rho = parse_surd(intercept)
        cfg = SturmianConfig(slope, rho, side)
    except (SurdParseError, ValueError) as exc:
        raise UsageFailure(str(exc))
    lo, hi = parse_box(box_spec) if box_spec else centered_box(slope.dim, 7)
    if len(lo) != slope.dim:
        raise UsageFailure("box dimension does not match the slope")
    click.echo(f"irrationality: {slope.certificate.describe()}", err=True)
    p = cfg.patch(box_between(lo, hi))
    _emit(p.grid_text() + "\n" if grid else p.to_text(slope.dim + 1), out)


@main.command()
@click.option("--pair", "pair_file", default=None, type=click.Path(exists=True, dir_okay=False))
@click.option("--alpha", default=None)
@click.option("--intercept", default="0")
@click.option("--max-size", type=int, default=4)
@click.option("--mode", type=click.Choice(["connected", "boxes"]), default="connected")
@click.option("--guard", type=int, default=None)
@click.option("--margin", type=int, default=6, help="window margin for windowed languages")
@click.option("--report", default=None)
@click.option("--records", default=None, help="write one delimited record per pattern")
def verify(pair_file, alpha, intercept, max_size, mode, guard, margin, report, records):
    """Check occurrence balance, occurrence singletons and complexity."""
    if (pair_file is None) == (alpha is None):
        raise UsageFailure("give exactly one of --pair or --alpha")
    if pair_file:
        try:
            with open(pair_file) as fh:
                pair = read_pair_file(fh.read())
        except (ValueError, SurdParseError) as exc:
            raise UsageFailure(f"cannot read pair file: {exc}")
        if not pair.spot_check():
            click.echo("warning: declared difference set disagrees with x != y near it", err=True)
        lo, hi = pair.difference_set.bounds()
        r = max_size + margin
        source = WindowLanguage([pair.x, pair.y], tuple(c - r for c in lo), tuple(c + r for c in hi),
                                pair.difference_set)
    else:
        slope = load_slope(alpha)
        try:
            pair = sturmian_pair(slope, parse_surd(intercept))
        except (SurdParseError, ValueError) as exc:
            raise UsageFailure(str(exc))
        source = ExactLanguage(slope)
    limit = default_guard(pair.dim) if guard is None else guard
    try:
        rep = verify_indistinguishable(pair, max_size, mode, limit, source)
    except GuardExceeded as exc:
        raise UsageFailure(str(exc))
    text = rep.summary() + "\n"
    flip = check_flip(pair)
    text += f"flip condition: {flip.diagnosis if flip else 'fails: ' + flip.diagnosis}\n"
    _emit(text, report)
    if report not in (None, "-"):
        click.echo(f"verdict: {rep.verdict}")
    if records:
        with open(records, "w", newline="") as fh:
            wr = csv.DictWriter(fh, fieldnames=["support", "pattern", "delta", "occ_x", "occ_y"], delimiter="\t")
            wr.writeheader()
            for rec in rep.records:
                wr.writerow(rec.as_row())
    sys.exit(0 if rep.passed else 1)


@main.command("complexity")
@click.option("--alpha", required=True)
@click.option("--shapes", required=True, help="e.g. '1x3 3x1 2x2'; plain integers when d = 1")
@click.option("--source", type=click.Choice(["exact", "window"]), default="exact")
@click.option("--window", type=int, default=200, help="side of the scanned box for --source window")
def complexity_cmd(alpha, shapes, source, window):
    """Tabulate measured pattern complexity against |F - S|."""
    slope = load_slope(alpha)
    shp = parse_shapes(shapes)
    if source == "exact":
        src = ExactLanguage(slope)
    else:
        cfg = SturmianConfig(slope)
        src = WindowLanguage([cfg], (0,) * slope.dim, (window - 1,) * slope.dim)
        src.difference_set = None
    click.echo("shape\tmeasured\tpredicted\tclosed_form\tmatch")
    ok = True
    for m in shp:
        if len(m) != slope.dim:
            raise UsageFailure(f"shape {m} does not match dimension {slope.dim}")
        res = complexity(src, box(m))
        cf = rectangular_complexity(m)
        ok &= res.match and res.predicted == cf
        click.echo(f"{'x'.join(map(str, m))}\t{res.measured}\t{res.predicted}\t{cf}\t{'yes' if res.match else 'no'}")
    sys.exit(0 if ok else 1)


@main.command()
@click.option("--alpha", required=True)
@click.option("--support", "support_file", default=None, type=click.Path(exists=True, dir_okay=False))
@click.option("--points", default=None, help="support points 'x,y;x,y;...'")
@click.option("--box", "box_spec", default=None)
@click.option("--empty", is_flag=True, help="use the empty pattern")
@click.option("--left", default=None)
@click.option("--right", default=None)
@click.option("--random-supports", type=int, default=0, help="scan this many random connected supports")
@click.option("--max-size", type=int, default=5)
@click.option("--seed", type=int, default=0)
@click.option("--all-records", is_flag=True, help="include patterns that are not bispecial")
@click.option("-o", "--out", default=None)
def bispecial(alpha, support_file, points, box_spec, empty, left, right, random_supports, max_size, seed,
              all_records, out):
    """Extension graphs and bilateral multiplicities as delimited records."""
    slope = load_slope(alpha)
    d = slope.dim
    src = ExactLanguage(slope)
    supports = []
    if random_supports:
        pool = list(enumerate_connected_supports(d, max_size))
        rng = random.Random(seed)
        supports = [rng.choice(pool) for _ in range(random_supports)]
    elif empty:
        supports = [Support([], d)]
    elif support_file:
        with open(support_file) as fh:
            supports = [Support.from_text(fh.read())]
    elif points:
        supports = [Support([parse_point(p) for p in points.split(";")], d)]
    elif box_spec:
        lo, hi = parse_box(box_spec)
        supports = [box_between(lo, hi)]
    else:
        raise UsageFailure("give a support via --support, --points, --box, --empty or --random-supports")
    positions = None
    if left or right:
        if not (left and right):
            raise UsageFailure("--left and --right go together")
        positions = [(parse_point(left), parse_point(right))]
    buf = io.StringIO()
    wr = csv.writer(buf, delimiter="\t", lineterminator="\n")
    wr.writerow(RECORD_HEADER)
    for S in supports:
        pos = positions
        if pos is None and len(S) == 0:
            pos = [(zero(d), unit(d, 1))]
        try:
            if all_records or len(S) == 0:
                recs = []
                for l, r in (pos or default_positions(S, d)):
                    recs.extend(multiplicity_records(src, S, l, r))
            else:
                recs = bispecial_scan(src, S, pos)
        except ValueError as exc:
            raise UsageFailure(str(exc))
        for rec in recs:
            wr.writerow(rec.as_row())
    _emit(buf.getvalue(), out)


@main.command()
@click.option("--alpha", required=True)
@click.option("--intercept", default="0")
@click.option("--side", type=click.Choice([LOWER, UPPER]), default=LOWER)
@click.option("--box", "box_spec", default="-7:7,-7:7")
@click.option("--scale", type=float, default=20.0)
@click.option("-o", "--out", required=True)
def tiling(alpha, intercept, side, box_spec, scale, out):
    """Rhombus tiling of a two-dimensional configuration as SVG."""
    slope = load_slope(alpha)
    if slope.dim != 2:
        raise UsageFailure("tilings are drawn for d = 2 only")
    cfg = SturmianConfig(slope, parse_surd(intercept), side)
    lo, hi = parse_box(box_spec)
    _emit(tiles_svg(rhombus_tiles(cfg, lo, hi), scale), out)


def reduction_report(slope, cells):
    """Compare pi o c_alpha restricted to e_1-perp with c of the tail slope."""
    d = slope.dim
    cfg = SturmianConfig(slope)
    reduced = restrict_sublattice(project_pi(cfg), zero(d), [unit(d, i) for i in range(2, d + 1)])
    target = SturmianConfig(slope.entries[1:])
    k = d - 1
    side = max(1, round(cells ** (1.0 / k)))
    r = side // 2
    lo, hi = (-r,) * k, (side - 1 - r,) * k
    a = reduced.window(lo, hi)
    b = target.window(lo, hi)
    return a, b, bool((a == b).all())


@main.command()
@click.option("--alpha", required=True)
@click.option("--levels", type=int, default=1)
@click.option("--cells", type=int, default=200)
def reduce(alpha, levels, cells):
    """Check the projection and slice reduction one dimension at a time."""
    slope = load_slope(alpha)
    if not slope.is_descending():
        raise UsageFailure("slope is not in decreasing order; normalize the pair first")
    if levels < 1 or levels >= slope.dim:
        raise UsageFailure(f"levels must be between 1 and {slope.dim - 1} for d = {slope.dim}")
    cur = slope
    ok = True
    for lev in range(levels):
        a, b, same = reduction_report(cur, cells)
        ok &= same
        click.echo(f"level {lev + 1}: d={cur.dim} -> d={cur.dim - 1}, cells={a.size}, "
                   f"verdict={'equal' if same else 'different'}")
        if cur.dim - 1 == 1:
            click.echo("  reduced : " + "".join(map(str, a.ravel()[:80].tolist())))
            click.echo("  expected: " + "".join(map(str, b.ravel()[:80].tolist())))
        cur = SlopeVector(cur.entries[1:])
    sys.exit(0 if ok else 1)


def template_sequence(template, start, stop):
    out = []
    for n in range(start, stop + 1):
        text = template.replace("n", f"({n})")
        out.append(parse_slope(text))
    return out


@main.command()
@click.option("--template", default=None, help="slope literal in the variable n")
@click.option("--range", "n_range", default="2:64")
@click.option("--alpha", "alphas", multiple=True, help="explicit slopes, repeatable")
@click.option("--box", "box_spec", default="-7:7,-7:7")
def etale(template, n_range, alphas, box_spec):
    """Finite-window stabilization report for a sequence of Sturmian pairs."""
    try:
        if template:
            a, b = (int(v) for v in n_range.split(":"))
            slopes = template_sequence(template, a, b)
        elif alphas:
            slopes = [parse_slope(t) for t in alphas]
        else:
            raise UsageFailure("give --template or --alpha")
    except (SurdParseError, ValueError) as exc:
        raise UsageFailure(str(exc))
    for s in slopes:
        if not s.usable():
            raise UsageFailure("slope is not totally irrational: " + str(s))
    lo, hi = parse_box(box_spec)
    rep = etale_consistency([sturmian_pair(s) for s in slopes], (lo, hi))
    click.echo(f"terms: {len(slopes)}")
    click.echo(f"note: {rep.watermark}; {rep.framing}")
    if not rep.stabilized:
        click.echo("stabilized: no")
        return
    click.echo(f"stabilized: yes, from index {rep.stabilization_index}")
    click.echo("uniform difference set: "
               + ("none inside the window" if rep.uniform_difference_set is None
                  else " ".join(str(p) for p in rep.uniform_difference_set)))
    for name, g in (("x", rep.limit_x), ("y", rep.limit_y)):
        click.echo(f"limit {name}:")
        if g.ndim == 2:
            for row in range(g.shape[1] - 1, -1, -1):
                click.echo("  " + " ".join(str(int(v)) for v in g[:, row]))
        else:
            click.echo("  " + " ".join(str(int(v)) for v in g.ravel()))


@main.command()
@click.option("--alpha", required=True)
@click.option("--intercept", default="0")
@click.option("--side", type=click.Choice([LOWER, UPPER]), default=LOWER)
@click.option("--size", type=int, default=200, help="side of the box window")
def frequencies(alpha, intercept, side, size):
    """Empirical symbol frequencies against the window cell lengths."""
    slope = load_slope(alpha)
    cfg = SturmianConfig(slope, parse_surd(intercept), side)
    freqs = symbol_frequencies(cfg, box((size,) * slope.dim))
    lengths = window_lengths(slope)
    click.echo("symbol\tempirical\twindow_length\tlength_value\tabs_diff")
    for i, (f, L) in enumerate(zip(freqs, lengths)):
        click.echo(f"{i}\t{float(f):.6f}\t{L}\t{float(L):.6f}\t{abs(float(f) - float(L)):.6f}")


if __name__ == "__main__":
    main()

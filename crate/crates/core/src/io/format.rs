//! Line-oriented text formats with exact rationals.
//!
//! Every file starts with `stlab <kind> 1`; blank lines and `#` comments are
//! ignored; each remaining line is one record.

use std::fmt::Write as _;
use std::path::Path;

use crate::combination::{FlatBundle, Region, RegionAssignment, RegionCase};
use crate::covering::{
    build_shift_graph, verify_family, AxisBox, AxisMap, CoverResult, FreeCube, Normalization, SignedAxis, SizeCheck,
    VerificationReport,
};
use crate::exact::{parse_rational, ComplexLine, ComplexPoint, Flat2, GaussianRational, RVector4, Rational};
use crate::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn header(kind: &str) -> String {
    format!("stlab {kind} {FORMAT_VERSION}\n")
}

/// Reads the kind named in the header.
pub fn file_kind(text: &str) -> Result<String> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
    let words: Vec<&str> = first.ok_or_else(|| perr(1, "empty input"))?.split_whitespace().collect();
    match words.as_slice() {
        ["stlab", kind, version] => {
            if *version != FORMAT_VERSION.to_string() {
                return Err(perr(1, format!("unsupported version {version}")));
            }
            Ok(kind.to_string())
        }
        _ => Err(perr(1, "missing header `stlab <kind> 1`")),
    }
}

/// Records after the header, as (1-based line number, tokens).
fn records<'a>(text: &'a str, kind: &str) -> Result<Vec<(usize, Vec<&'a str>)>> {
    let found = file_kind(text)?;
    if found != kind {
        return Err(perr(1, format!("expected a {kind} file, found {found}")));
    }
    let mut out = Vec::new();
    let mut seen_header = false;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if !seen_header {
            seen_header = true;
            continue;
        }
        out.push((i + 1, line.split_whitespace().collect()));
    }
    Ok(out)
}

fn rats(line: usize, toks: &[&str]) -> Result<Vec<Rational>> {
    toks.iter().map(|t| parse_rational(t).map_err(|_| perr(line, format!("bad rational {t:?}")))).collect()
}

fn exact_rats(line: usize, toks: &[&str], n: usize) -> Result<Vec<Rational>> {
    if toks.len() != n {
        return Err(perr(line, format!("expected {n} numbers, found {}", toks.len())));
    }
    rats(line, toks)
}

fn gauss(v: &[Rational]) -> GaussianRational {
    GaussianRational::new(v[0].clone(), v[1].clone())
}

fn vec4(v: &[Rational]) -> RVector4 {
    RVector4(std::array::from_fn(|i| v[i].clone()))
}

fn push_row(out: &mut String, tag: &str, vals: impl IntoIterator<Item = impl std::fmt::Display>) {
    out.push_str(tag);
    for v in vals {
        let _ = write!(out, " {v}");
    }
    out.push('\n');
}

fn gauss_parts(z: &GaussianRational) -> [&Rational; 2] {
    [&z.re, &z.im]
}

fn usize_tok(line: usize, t: &str) -> Result<usize> {
    t.parse().map_err(|_| perr(line, format!("bad count {t:?}")))
}

/// Points and lines of C².
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SystemFile {
    pub points: Vec<ComplexPoint>,
    pub lines: Vec<ComplexLine>,
}

pub fn write_system(sys: &SystemFile) -> String {
    let mut out = header("system");
    for p in &sys.points {
        push_row(&mut out, "point", gauss_parts(&p.z1).into_iter().chain(gauss_parts(&p.z2)));
    }
    for l in &sys.lines {
        match l {
            ComplexLine::Slanted { a, b } => {
                push_row(&mut out, "line slanted", gauss_parts(a).into_iter().chain(gauss_parts(b)))
            }
            ComplexLine::Vertical { c } => push_row(&mut out, "line vertical", gauss_parts(c)),
        }
    }
    out
}

pub fn parse_system(text: &str) -> Result<SystemFile> {
    let mut sys = SystemFile::default();
    for (line, toks) in records(text, "system")? {
        match toks.as_slice() {
            ["point", rest @ ..] => {
                let v = exact_rats(line, rest, 4)?;
                sys.points.push(ComplexPoint::new(gauss(&v[0..2]), gauss(&v[2..4])));
            }
            ["line", "slanted", rest @ ..] => {
                let v = exact_rats(line, rest, 4)?;
                sys.lines.push(ComplexLine::slanted(gauss(&v[0..2]), gauss(&v[2..4])));
            }
            ["line", "vertical", rest @ ..] => {
                let v = exact_rats(line, rest, 2)?;
                sys.lines.push(ComplexLine::vertical(gauss(&v)));
            }
            _ => return Err(perr(line, "expected `point` or `line slanted|vertical`")),
        }
    }
    Ok(sys)
}

/// A list of Gaussian rationals, one `re im` pair per line.
pub fn write_numbers(values: &[GaussianRational]) -> String {
    let mut out = header("numbers");
    for z in values {
        push_row(&mut out, "", gauss_parts(z));
    }
    out.lines().map(str::trim_start).collect::<Vec<_>>().join("\n") + "\n"
}

pub fn parse_numbers(text: &str) -> Result<Vec<GaussianRational>> {
    records(text, "numbers")?
        .into_iter()
        .map(|(line, toks)| match toks.len() {
            1 => Ok(GaussianRational::real(exact_rats(line, &toks, 1)?.remove(0))),
            _ => exact_rats(line, &toks, 2).map(|v| gauss(&v)),
        })
        .collect()
}

/// Points of R^d, one per line.
pub fn write_cloud(points: &[Vec<Rational>]) -> String {
    let mut out = header("cloud");
    if let Some(p) = points.first() {
        let _ = writeln!(out, "dim {}", p.len());
    }
    for p in points {
        push_row(&mut out, "p", p);
    }
    out
}

pub fn parse_cloud(text: &str) -> Result<Vec<Vec<Rational>>> {
    let mut dim = None;
    let mut out = Vec::new();
    for (line, toks) in records(text, "cloud")? {
        match toks.as_slice() {
            ["dim", d] => dim = Some(usize_tok(line, d)?),
            ["p", rest @ ..] => {
                let d = *dim.get_or_insert(rest.len());
                out.push(exact_rats(line, rest, d)?);
            }
            _ => return Err(perr(line, "expected `dim` or `p`")),
        }
    }
    Ok(out)
}

fn flat_row(out: &mut String, tag: &str, f: &Flat2) {
    let (u, v) = f.dirs();
    push_row(out, tag, f.base().0.iter().chain(&u.0).chain(&v.0));
}

fn parse_flat(line: usize, toks: &[&str]) -> Result<Flat2> {
    let v = exact_rats(line, toks, 12)?;
    Flat2::new(vec4(&v[0..4]), vec4(&v[4..8]), vec4(&v[8..12])).map_err(|e| perr(line, e.to_string()))
}

/// 2-flats of R⁴ as `base dir1 dir2`.
pub fn write_flats(flats: &[Flat2]) -> String {
    let mut out = header("flats");
    for f in flats {
        flat_row(&mut out, "flat", f);
    }
    out
}

pub fn parse_flats(text: &str) -> Result<Vec<Flat2>> {
    records(text, "flats")?
        .into_iter()
        .map(|(line, toks)| match toks.as_slice() {
            ["flat", rest @ ..] => parse_flat(line, rest),
            _ => Err(perr(line, "expected `flat`")),
        })
        .collect()
}

/// Anchors, each followed by its flats of the first and second family.
pub fn write_bundle(b: &FlatBundle) -> String {
    let mut out = header("bundle");
    for (i, p) in b.anchors().iter().enumerate() {
        push_row(&mut out, "anchor", &p.0);
        for f in b.first(i) {
            flat_row(&mut out, "first", f);
        }
        for f in b.second(i) {
            flat_row(&mut out, "second", f);
        }
    }
    out
}

pub fn parse_bundle(text: &str) -> Result<FlatBundle> {
    let (mut anchors, mut l1, mut l2) = (Vec::new(), Vec::<Vec<Flat2>>::new(), Vec::<Vec<Flat2>>::new());
    for (line, toks) in records(text, "bundle")? {
        match toks.as_slice() {
            ["anchor", rest @ ..] => {
                anchors.push(vec4(&exact_rats(line, rest, 4)?));
                l1.push(Vec::new());
                l2.push(Vec::new());
            }
            [tag @ ("first" | "second"), rest @ ..] => {
                let f = parse_flat(line, rest)?;
                let fam = if *tag == "first" { &mut l1 } else { &mut l2 };
                fam.last_mut().ok_or_else(|| perr(line, "flat before any anchor"))?.push(f);
            }
            _ => return Err(perr(line, "expected `anchor`, `first` or `second`")),
        }
    }
    FlatBundle::new(anchors, l1, l2)
}

/// A self-contained covering result: parameters, the similarity and axis
/// map into the cover frame, the input points, the cubes and the shift
/// graph edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverFile {
    pub d: usize,
    pub kappa: u32,
    pub r: usize,
    pub normalization: Normalization,
    pub axis_map: AxisMap,
    pub orientation: SignedAxis,
    pub points: Vec<Vec<Rational>>,
    pub cubes: Vec<FreeCube>,
    pub edges: Vec<(usize, usize)>,
}

impl CoverFile {
    /// Packs a covering run together with its input and shift graph.
    pub fn from_result(points: &[Vec<Rational>], res: &CoverResult) -> Result<Self> {
        let graph = build_shift_graph(&res.cubes, res.kappa)?;
        Ok(CoverFile {
            d: res.d,
            kappa: res.kappa,
            r: res.r,
            normalization: res.normalization.clone(),
            axis_map: res.axis_map.clone(),
            orientation: res.orientation,
            points: points.to_vec(),
            cubes: res.cubes.clone(),
            edges: graph.edges,
        })
    }

    pub fn to_cover_frame(&self, p: &[Rational]) -> Vec<Rational> {
        self.axis_map.apply(&self.normalization.apply(p))
    }

    /// Checks the stored cubes against the stored points. The second value
    /// says whether the recorded edges equal the recomputed shift graph
    /// (`None` if the cubes overlap and no graph exists).
    pub fn verify(&self) -> (VerificationReport, Option<bool>) {
        let framed: Vec<Vec<Rational>> = self.points.iter().map(|p| self.to_cover_frame(p)).collect();
        let mut report = verify_family(&framed, &self.cubes, self.kappa, self.r);
        report.size = SizeCheck::new(self.cubes.len(), self.points.len(), self.d, self.kappa, self.r);
        let edges = build_shift_graph(&self.cubes, self.kappa).ok().map(|g| g.edges == self.edges);
        (report, edges)
    }
}

fn parse_axis(line: usize, t: &str) -> Result<SignedAxis> {
    let bad = || perr(line, format!("bad signed axis {t:?}"));
    let (sign, rest) = t.split_at(1);
    let k: usize = rest.strip_prefix('e').ok_or_else(bad)?.parse().map_err(|_| bad())?;
    match (sign, k) {
        ("+", 1..) => Ok(SignedAxis::pos(k - 1)),
        ("-", 1..) => Ok(SignedAxis::neg(k - 1)),
        _ => Err(bad()),
    }
}

pub fn write_cover(c: &CoverFile) -> String {
    let mut out = header("cover");
    let _ = writeln!(out, "dim {}\nkappa {}\nr {}", c.d, c.kappa, c.r);
    let _ = writeln!(out, "scale {}", c.normalization.scale);
    push_row(&mut out, "translate", &c.normalization.translate);
    push_row(&mut out, "perm", &c.axis_map.perm);
    push_row(&mut out, "flip", c.axis_map.flip.iter().map(|&f| f as u8));
    let _ = writeln!(out, "orientation {}", c.orientation);
    for p in &c.points {
        push_row(&mut out, "point", p);
    }
    for q in &c.cubes {
        push_row(&mut out, "cube", q.corner.iter().chain(std::iter::once(&q.side)));
    }
    for (a, b) in &c.edges {
        let _ = writeln!(out, "edge {a} {b}");
    }
    out
}

pub fn parse_cover(text: &str) -> Result<CoverFile> {
    let mut d = None;
    let (mut kappa, mut r) = (None, None);
    let mut scale = None;
    let mut translate = None;
    let (mut perm, mut flip) = (None, None);
    let mut orientation = SignedAxis::BOTTOM;
    let (mut points, mut cubes, mut edges) = (Vec::new(), Vec::new(), Vec::new());
    for (line, toks) in records(text, "cover")? {
        let need_d = || d.ok_or_else(|| perr(line, "`dim` must come first"));
        match toks.as_slice() {
            ["dim", v] => d = Some(usize_tok(line, v)?),
            ["kappa", v] => kappa = Some(usize_tok(line, v)? as u32),
            ["r", v] => r = Some(usize_tok(line, v)?),
            ["scale", v] => scale = Some(exact_rats(line, &[v], 1)?.remove(0)),
            ["translate", rest @ ..] => translate = Some(exact_rats(line, rest, need_d()?)?),
            ["perm", rest @ ..] => perm = Some(rest.iter().map(|t| usize_tok(line, t)).collect::<Result<Vec<_>>>()?),
            ["flip", rest @ ..] => flip = Some(rest.iter().map(|t| *t == "1").collect::<Vec<_>>()),
            ["orientation", v] => orientation = parse_axis(line, v)?,
            ["point", rest @ ..] => points.push(exact_rats(line, rest, need_d()?)?),
            ["cube", rest @ ..] => {
                let mut v = exact_rats(line, rest, need_d()? + 1)?;
                let side = v.pop().expect("side");
                cubes.push(FreeCube::new(v, side));
            }
            ["edge", a, b] => edges.push((usize_tok(line, a)?, usize_tok(line, b)?)),
            _ => return Err(perr(line, format!("unknown record {:?}", toks[0]))),
        }
    }
    let d = d.ok_or_else(|| perr(0, "missing `dim`"))?;
    let perm = perm.unwrap_or_else(|| (0..d).collect());
    let flip = flip.unwrap_or_else(|| vec![false; d]);
    let mut sorted = perm.clone();
    sorted.sort();
    if sorted != (0..d).collect::<Vec<_>>() || flip.len() != d {
        return Err(perr(0, "axis map is not a signed permutation"));
    }
    Ok(CoverFile {
        d,
        kappa: kappa.ok_or_else(|| perr(0, "missing `kappa`"))?,
        r: r.ok_or_else(|| perr(0, "missing `r`"))?,
        normalization: Normalization {
            scale: scale.ok_or_else(|| perr(0, "missing `scale`"))?,
            translate: translate.unwrap_or_else(|| vec![Rational::from_integer(0.into()); d]),
        },
        axis_map: AxisMap { perm, flip },
        orientation,
        points,
        cubes,
        edges,
    })
}

/// Region assignments: a `region` record opens each one, followed by its
/// `points` and `box` records.
pub fn write_regions(r: usize, assignments: &[RegionAssignment]) -> String {
    let mut out = header("regions");
    let _ = writeln!(out, "r {r}");
    for a in assignments {
        let case = match a.case {
            RegionCase::Shift => "shift".to_string(),
            RegionCase::Below => "below".to_string(),
            RegionCase::Beside { axis } => format!("beside {}", axis + 1),
        };
        let _ = writeln!(out, "region {} {case}", a.cube);
        push_row(&mut out, "points", &a.points);
        for b in &a.region.boxes {
            push_row(&mut out, "box", b.lo.iter().chain(&b.hi));
        }
    }
    out
}

pub fn parse_regions(text: &str) -> Result<(usize, Vec<RegionAssignment>)> {
    let mut r = None;
    let mut out: Vec<RegionAssignment> = Vec::new();
    for (line, toks) in records(text, "regions")? {
        let current = |out: &mut Vec<RegionAssignment>| -> Result<usize> {
            out.len().checked_sub(1).ok_or_else(|| perr(line, "record before any `region`"))
        };
        match toks.as_slice() {
            ["r", v] => r = Some(usize_tok(line, v)?),
            ["region", cube, case @ ..] => {
                let case = match case {
                    ["shift"] => RegionCase::Shift,
                    ["below"] => RegionCase::Below,
                    ["beside", k] => RegionCase::Beside { axis: usize_tok(line, k)?.saturating_sub(1) },
                    _ => return Err(perr(line, "unknown region case")),
                };
                out.push(RegionAssignment {
                    region: Region { boxes: Vec::new() },
                    points: Vec::new(),
                    cube: usize_tok(line, cube)?,
                    case,
                });
            }
            ["points", rest @ ..] => {
                let k = current(&mut out)?;
                out[k].points = rest.iter().map(|t| usize_tok(line, t)).collect::<Result<_>>()?;
            }
            ["box", rest @ ..] => {
                let k = current(&mut out)?;
                if rest.len() % 2 != 0 || rest.is_empty() {
                    return Err(perr(line, "a box needs lo and hi corners of equal length"));
                }
                let mut v = rats(line, rest)?;
                let hi = v.split_off(rest.len() / 2);
                out[k].region.boxes.push(AxisBox::new(v, hi));
            }
            _ => return Err(perr(line, format!("unknown record {:?}", toks[0]))),
        }
    }
    Ok((r.ok_or_else(|| perr(0, "missing `r`"))?, out))
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path).inspect_err(|_| {
        let _ = std::fs::remove_file(&tmp);
    })
}

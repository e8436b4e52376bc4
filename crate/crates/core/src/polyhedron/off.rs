//! Object File Format: `OFF`, then `V F E`, then vertex lines, then face lines `n i1 .. in`.

use std::fmt::Write as _;

use nalgebra::Vector3;

use super::{PolyhedralSurface, SurfaceError};

pub fn load_off(bytes: &[u8]) -> Result<PolyhedralSurface, SurfaceError> {
    let text = std::str::from_utf8(bytes).map_err(|e| SurfaceError::Parse { line: 0, msg: e.to_string() })?;
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let err = |line: usize, msg: &str| SurfaceError::Parse { line, msg: msg.to_string() };

    let (line, header) = lines.next().ok_or_else(|| err(0, "empty input"))?;
    let mut counts_line = None;
    if header == "OFF" {
        // counts on the next line
    } else if let Some(rest) = header.strip_prefix("OFF") {
        counts_line = Some((line, rest.trim()));
    } else {
        return Err(err(line, "missing OFF header"));
    }
    let (line, counts) = match counts_line {
        Some(c) => c,
        None => lines.next().ok_or_else(|| err(line, "missing counts"))?,
    };
    let nums = parse_numbers::<usize>(counts).map_err(|m| err(line, &m))?;
    if nums.len() < 2 {
        return Err(err(line, "expected 'V F E' counts"));
    }
    let (nv, nf) = (nums[0], nums[1]);

    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (line, l) = lines.next().ok_or_else(|| err(0, "unexpected end of input in vertex list"))?;
        let c = parse_numbers::<f64>(l).map_err(|m| err(line, &m))?;
        if c.len() < 3 {
            return Err(err(line, "vertex needs three coordinates"));
        }
        vertices.push(Vector3::new(c[0], c[1], c[2]));
    }
    let mut faces = Vec::with_capacity(nf);
    for _ in 0..nf {
        let (line, l) = lines.next().ok_or_else(|| err(0, "unexpected end of input in face list"))?;
        let mut it = l.split_whitespace();
        let n: usize = it.next().and_then(|t| t.parse().ok()).ok_or_else(|| err(line, "bad face size"))?;
        let idx: Vec<usize> = it
            .take(n)
            .map(|t| t.parse::<usize>().map_err(|_| err(line, "bad vertex index")))
            .collect::<Result<_, _>>()?;
        if idx.len() != n {
            return Err(err(line, "face has fewer indices than declared"));
        }
        faces.push(idx);
    }
    PolyhedralSurface::new(vertices, faces)
}

fn parse_numbers<T: std::str::FromStr>(line: &str) -> Result<Vec<T>, String> {
    line.split_whitespace().map(|t| t.parse::<T>().map_err(|_| format!("cannot parse {t:?}"))).collect()
}

pub fn write_off(surface: &PolyhedralSurface) -> String {
    let mut out = String::from("OFF\n");
    let _ = writeln!(out, "{} {} {}", surface.vertex_count(), surface.face_count(), surface.edge_count());
    for v in surface.vertices() {
        let _ = writeln!(out, "{} {} {}", v.x, v.y, v.z);
    }
    for f in surface.faces() {
        let idx: Vec<String> = f.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{} {}", f.len(), idx.join(" "));
    }
    out
}

//! CSV exchange format.
//!
//! Every table starts with a `-inf` row and ends with a `+inf` row carrying the limits.
//! Line functions use `x,value`, pairs use `x,f1,f2`, and sharp functions use
//! `x,side,value` with `side` in `{L, R}` and two rows at `x = 0`.

use std::io::{Read, Write};

use super::{FunctionPair, Grid, LineFunction, SharpFunction};
use crate::error::{Error, Result};

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_num(s: &str) -> Result<f64> {
    match s.trim() {
        "-inf" => Ok(f64::NEG_INFINITY),
        "+inf" | "inf" => Ok(f64::INFINITY),
        t => t.parse::<f64>().map_err(|_| Error::Parse(format!("not a number: {t:?}"))),
    }
}

fn grid_from_nodes(xs: &[f64]) -> Result<Grid> {
    let n = xs.len();
    if n < 3 {
        return Err(Error::Parse("too few nodes".into()));
    }
    let half = -xs[0];
    let grid = Grid::new(half, n)?;
    let h = grid.spacing();
    for (k, &x) in xs.iter().enumerate() {
        if (x - grid.node(k)).abs() > 1e-6 * h {
            return Err(Error::Parse(format!("node {k} at {x} is off the uniform grid")));
        }
    }
    Ok(grid)
}

fn records<R: Read>(reader: R, header: &[&str]) -> Result<Vec<Vec<String>>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
    let hdr = rdr.headers()?.clone();
    if hdr.iter().collect::<Vec<_>>() != header {
        return Err(Error::Parse(format!("expected header {}", header.join(","))));
    }
    let mut rows: Vec<Vec<String>> = Vec::new();
    for rec in rdr.records() {
        rows.push(rec?.iter().map(str::to_owned).collect());
    }
    if rows.len() < 2 {
        return Err(Error::Parse("missing limit rows".into()));
    }
    let first = parse_num(&rows[0][0])?;
    let last = parse_num(&rows[rows.len() - 1][0])?;
    if first != f64::NEG_INFINITY || last != f64::INFINITY {
        return Err(Error::Parse("first row must be -inf and last row +inf".into()));
    }
    Ok(rows)
}

pub fn write_line<W: Write>(f: &LineFunction, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "value"])?;
    w.write_record(["-inf".to_string(), num(f.limit_neg())])?;
    for (k, v) in f.samples().iter().enumerate() {
        w.write_record([num(f.grid().node(k)), num(*v)])?;
    }
    w.write_record(["+inf".to_string(), num(f.limit_pos())])?;
    w.flush()?;
    Ok(())
}

pub fn read_line<R: Read>(input: R) -> Result<LineFunction> {
    let rows = records(input, &["x", "value"])?;
    let body = &rows[1..rows.len() - 1];
    let xs = body.iter().map(|r| parse_num(&r[0])).collect::<Result<Vec<_>>>()?;
    let vs = body.iter().map(|r| parse_num(&r[1])).collect::<Result<Vec<_>>>()?;
    let grid = grid_from_nodes(&xs)?;
    LineFunction::new(grid, vs, parse_num(&rows[0][1])?, parse_num(&rows[rows.len() - 1][1])?)
}

pub fn write_pair<W: Write>(p: &FunctionPair, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "f1", "f2"])?;
    let (a, b) = (p.first(), p.second());
    w.write_record(["-inf".to_string(), num(a.limit_neg()), num(b.limit_neg())])?;
    for k in 0..p.grid().n_points() {
        w.write_record([num(p.grid().node(k)), num(a.samples()[k]), num(b.samples()[k])])?;
    }
    w.write_record(["+inf".to_string(), num(a.limit_pos()), num(b.limit_pos())])?;
    w.flush()?;
    Ok(())
}

pub fn read_pair<R: Read>(input: R) -> Result<FunctionPair> {
    let rows = records(input, &["x", "f1", "f2"])?;
    let body = &rows[1..rows.len() - 1];
    let xs = body.iter().map(|r| parse_num(&r[0])).collect::<Result<Vec<_>>>()?;
    let grid = grid_from_nodes(&xs)?;
    let col = |c: usize| -> Result<LineFunction> {
        let vs = body.iter().map(|r| parse_num(&r[c])).collect::<Result<Vec<_>>>()?;
        LineFunction::new(grid, vs, parse_num(&rows[0][c])?, parse_num(&rows[rows.len() - 1][c])?)
    };
    FunctionPair::new(col(1)?, col(2)?)
}

pub fn write_sharp<W: Write>(f: &SharpFunction, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let grid = f.grid();
    let m = grid.center();
    w.write_record(["x", "side", "value"])?;
    w.write_record(["-inf".to_string(), "L".into(), num(f.limit_neg())])?;
    for (k, v) in f.left().iter().enumerate() {
        w.write_record([num(grid.node(k)), "L".into(), num(*v)])?;
    }
    for (j, v) in f.right().iter().enumerate() {
        w.write_record([num(grid.node(m + j)), "R".into(), num(*v)])?;
    }
    w.write_record(["+inf".to_string(), "R".into(), num(f.limit_pos())])?;
    w.flush()?;
    Ok(())
}

pub fn read_sharp<R: Read>(input: R) -> Result<SharpFunction> {
    let rows = records(input, &["x", "side", "value"])?;
    let body = &rows[1..rows.len() - 1];
    let (mut lx, mut lv, mut rx, mut rv) = (vec![], vec![], vec![], vec![]);
    for r in body {
        let (x, v) = (parse_num(&r[0])?, parse_num(&r[2])?);
        match r[1].as_str() {
            "L" => {
                lx.push(x);
                lv.push(v);
            }
            "R" => {
                rx.push(x);
                rv.push(v);
            }
            s => return Err(Error::Parse(format!("unknown side {s:?}"))),
        }
    }
    if lx.is_empty() || rx.is_empty() || *lx.last().unwrap() != 0.0 || rx[0] != 0.0 {
        return Err(Error::Parse("both branches must reach x = 0".into()));
    }
    let xs: Vec<f64> = lx.iter().chain(&rx[1..]).copied().collect();
    let grid = grid_from_nodes(&xs)?;
    SharpFunction::new(grid, lv, rv, parse_num(&rows[0][2])?, parse_num(&rows[rows.len() - 1][2])?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Grid {
        Grid::new(1.0, 21).unwrap()
    }

    #[test]
    fn line_round_trip_is_exact() {
        let f = LineFunction::from_fn_with_limits(grid(), |x| (3.0 * x).sin() / 7.0, -0.25, 1.0 / 3.0);
        let mut buf = Vec::new();
        write_line(&f, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("x,value\n-inf,"));
        assert!(text.trim_end().lines().last().unwrap().starts_with("+inf,"));
        assert_eq!(read_line(&buf[..]).unwrap(), f);
    }

    #[test]
    fn sharp_round_trip_is_exact() {
        let f = SharpFunction::from_branches_with_limits(grid(), |x| x.exp(), |x| -x.cos(), 0.1, -0.2);
        let mut buf = Vec::new();
        write_sharp(&f, &mut buf).unwrap();
        assert_eq!(read_sharp(&buf[..]).unwrap(), f);
    }

    #[test]
    fn pair_round_trip_is_exact() {
        let p = FunctionPair::from_fn(grid(), |x| x / 3.0, |x| 1.0 - x * x);
        let mut buf = Vec::new();
        write_pair(&p, &mut buf).unwrap();
        assert_eq!(read_pair(&buf[..]).unwrap(), p);
    }

    #[test]
    fn malformed_input_is_rejected() {
        assert!(read_line("x,value\n0,1\n".as_bytes()).is_err());
        assert!(read_line("x,y\n-inf,0\n+inf,0\n".as_bytes()).is_err());
        assert!(read_line("x,value\n-inf,0\n-1,0\n0,abc\n1,0\n+inf,0\n".as_bytes()).is_err());
        assert!(read_line("x,value\n-inf,0\n-1,0\n0.3,0\n1,0\n+inf,0\n".as_bytes()).is_err());
    }
}

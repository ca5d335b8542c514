//! Flat-file formats: truth tables, ANF, partitions, tabulated maps and
//! the pi-spec mini-grammar. Every writer/parser pair round-trips.

use std::fmt;

use crate::boolfn::{AnfPolynomial, BooleanFunction};
use crate::gf2::{monomial_map, FieldGf2m, Flat, VectorialMap};
use crate::gmm::HChoice;
use crate::partitions::FlatPartition;

/// A malformed input file or spec string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(pub String);

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed input: {}", self.0)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = std::result::Result<T, ParseError>;

fn err<T>(msg: impl Into<String>) -> PResult<T> {
    Err(ParseError(msg.into()))
}

/// Non-comment, non-empty lines.
fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn parse_header(line: &str, key: &str) -> PResult<usize> {
    line.strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| ParseError(format!("expected `{key}=<value>`, got `{line}`")))
}

/// Truth-table file: `n=<n>` then one hex line, index 0 packed into the
/// most significant bit of the first digit.
pub fn write_truth_table(f: &BooleanFunction) -> String {
    let n = f.variables();
    assert!(n >= 2);
    let mut hex = String::with_capacity(1 << (n - 2));
    for i in (0..f.domain_size()).step_by(4) {
        let digit = ((f.get(i) as u32) << 3)
            | ((f.get(i + 1) as u32) << 2)
            | ((f.get(i + 2) as u32) << 1)
            | f.get(i + 3) as u32;
        hex.push(char::from_digit(digit, 16).unwrap());
    }
    format!("n={n}\n{hex}\n")
}

pub fn parse_truth_table(text: &str) -> PResult<BooleanFunction> {
    let mut lines = data_lines(text);
    let n = parse_header(lines.next().unwrap_or(""), "n")?;
    if !(2..=16).contains(&n) {
        return err(format!("unsupported variable count {n}"));
    }
    let hex = lines.next().unwrap_or("");
    if lines.next().is_some() {
        return err("trailing content after the truth table");
    }
    if hex.len() != 1 << (n - 2) {
        return err(format!(
            "expected {} hex digits for n={n}, got {}",
            1usize << (n - 2),
            hex.len()
        ));
    }
    let mut f = BooleanFunction::zero(n);
    for (pos, c) in hex.chars().enumerate() {
        let Some(digit) = c.to_digit(16) else {
            return err(format!("invalid hex digit `{c}`"));
        };
        for bit in 0..4 {
            f.set((pos * 4 + bit) as u32, (digit >> (3 - bit)) & 1 == 1);
        }
    }
    Ok(f)
}

/// ANF file: `n=<n>` then one polynomial line of `+`-separated terms,
/// `x1*x3`-style products, `1` for the constant, `0` for the zero function.
pub fn write_anf(p: &AnfPolynomial) -> String {
    let n = p.variables();
    // highest mask first, so e.g. `x1*x2 + x3 + 1`
    let mut terms: Vec<String> = Vec::new();
    for &mask in p.monomials().iter().rev() {
        if mask == 0 {
            terms.push("1".to_string());
        } else {
            let vars: Vec<String> = (0..n)
                .filter(|&i| mask >> (n - 1 - i) & 1 == 1)
                .map(|i| format!("x{}", i + 1))
                .collect();
            terms.push(vars.join("*"));
        }
    }
    let body = if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    };
    format!("n={n}\n{body}\n")
}

pub fn parse_anf(text: &str) -> PResult<AnfPolynomial> {
    let mut lines = data_lines(text);
    let n = parse_header(lines.next().unwrap_or(""), "n")?;
    if n > 16 {
        return err(format!("unsupported variable count {n}"));
    }
    let body = lines.next().unwrap_or("").trim();
    if lines.next().is_some() {
        return err("trailing content after the polynomial");
    }
    let mut monomials = Vec::new();
    if body != "0" {
        for term in body.split('+').map(str::trim) {
            if term == "1" {
                monomials.push(0);
                continue;
            }
            let mut mask = 0u32;
            for factor in term.split('*').map(str::trim) {
                let Some(i) = factor
                    .strip_prefix('x')
                    .and_then(|v| v.parse::<usize>().ok())
                    .filter(|&i| (1..=n).contains(&i))
                else {
                    return err(format!("invalid factor `{factor}` in term `{term}`"));
                };
                mask |= 1 << (n - i);
            }
            monomials.push(mask);
        }
    }
    Ok(AnfPolynomial::new(n, monomials))
}

/// Loads a function file in either format: a hex-only second line means a
/// truth table, anything else is parsed as ANF.
pub fn parse_function(text: &str) -> PResult<BooleanFunction> {
    let body = data_lines(text).nth(1).unwrap_or("");
    if !body.is_empty() && body.chars().all(|c| c.is_ascii_hexdigit()) {
        parse_truth_table(text)
    } else {
        Ok(parse_anf(text)?.truth_table())
    }
}

fn write_flat(flat: &Flat, width: usize, out: &mut String) {
    for (j, p) in flat.points().iter().enumerate() {
        if j > 0 {
            out.push(' ');
        }
        out.push_str(&format!("{:0width$b}", p));
    }
    out.push('\n');
}

/// Partition file: one flat per line as four binary strings, sorted by the
/// flat's minimum point; `#` comments allowed.
pub fn write_partition(p: &FlatPartition) -> String {
    let mut out = String::new();
    for flat in p.flats() {
        write_flat(flat, p.ambient(), &mut out);
    }
    out
}

/// Several partitions in one file, separated by blank lines.
pub fn write_partitions(ps: &[FlatPartition]) -> String {
    ps.iter()
        .map(write_partition)
        .collect::<Vec<_>>()
        .join("\n")
}

fn parse_flat_line(line: &str) -> PResult<(usize, [u32; 4])> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 4 {
        return err(format!("expected 4 points per line, got {}", fields.len()));
    }
    let width = fields[0].len();
    let mut pts = [0u32; 4];
    for (slot, field) in pts.iter_mut().zip(&fields) {
        if field.len() != width || width == 0 || width > 16 {
            return err(format!("inconsistent point width in `{line}`"));
        }
        *slot = u32::from_str_radix(field, 2)
            .map_err(|_| ParseError(format!("invalid binary string `{field}`")))?;
    }
    Ok((width, pts))
}

pub fn parse_partition(text: &str) -> PResult<FlatPartition> {
    let partitions = parse_partitions(text)?;
    match <[_; 1]>::try_from(partitions) {
        Ok([p]) => Ok(p),
        Err(ps) => err(format!("expected exactly one partition, found {}", ps.len())),
    }
}

pub fn parse_partitions(text: &str) -> PResult<Vec<FlatPartition>> {
    let mut out = Vec::new();
    let mut flats: Vec<Flat> = Vec::new();
    let mut width = 0usize;
    let mut finish = |flats: &mut Vec<Flat>, width: usize| -> PResult<()> {
        if flats.is_empty() {
            return Ok(());
        }
        let p = FlatPartition::from_flats(width - 1, std::mem::take(flats))
            .map_err(|e| ParseError(e.to_string()))?;
        out.push(p);
        Ok(())
    };
    for line in text.lines().map(str::trim) {
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            finish(&mut flats, width)?;
            continue;
        }
        let (w, pts) = parse_flat_line(line)?;
        if !flats.is_empty() && w != width {
            return err("point width changes within a partition");
        }
        width = w;
        flats.push(Flat::from_points(w, pts).map_err(|e| ParseError(e.to_string()))?);
    }
    finish(&mut flats, width)?;
    if out.is_empty() {
        return err("no partition found");
    }
    Ok(out)
}

/// Map file: `in=<a> out=<b>`, then one `<input-bits> <output-bits>` line
/// per input in index order.
pub fn write_map(map: &VectorialMap) -> String {
    let (a, b) = (map.in_dim(), map.out_dim());
    let mut out = format!("in={a} out={b}\n");
    for y in 0..1u32 << a {
        out.push_str(&format!(
            "{:0aw$b} {:0bw$b}\n",
            y,
            map.apply(y),
            aw = a,
            bw = b
        ));
    }
    out
}

pub fn parse_map(text: &str) -> PResult<VectorialMap> {
    let mut lines = data_lines(text);
    let header = lines.next().unwrap_or("");
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return err(format!("expected `in=<a> out=<b>`, got `{header}`"));
    }
    let a = parse_header(fields[0], "in")?;
    let b = parse_header(fields[1], "out")?;
    if a == 0 || a > 16 || b == 0 || b > 16 {
        return err(format!("unsupported map dimensions {a} -> {b}"));
    }
    let mut table = vec![None; 1 << a];
    for line in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 || fields[0].len() != a || fields[1].len() != b {
            return err(format!("invalid map line `{line}`"));
        }
        let y = u32::from_str_radix(fields[0], 2)
            .map_err(|_| ParseError(format!("invalid input `{}`", fields[0])))?;
        let v = u32::from_str_radix(fields[1], 2)
            .map_err(|_| ParseError(format!("invalid output `{}`", fields[1])))?;
        if table[y as usize].replace(v).is_some() {
            return err(format!("duplicate input {y:0a$b}"));
        }
    }
    let table: Option<Vec<u32>> = table.into_iter().collect();
    match table {
        Some(t) => Ok(VectorialMap::new(a, b, t)),
        None => err("missing inputs in the map table"),
    }
}

/// pi-spec: `monomial:m=<m>,d=<d>,alpha=g^<e>[,mod=<hex>]` (default
/// modulus: the lexicographically smallest irreducible) or `table:<path>`.
pub fn parse_pi_spec(spec: &str) -> PResult<VectorialMap> {
    if let Some(path) = spec.strip_prefix("table:") {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ParseError(format!("cannot read `{path}`: {e}")))?;
        return parse_map(&text);
    }
    let Some(body) = spec.strip_prefix("monomial:") else {
        return err(format!("unknown pi-spec `{spec}`"));
    };
    let (mut m, mut d, mut alpha_exp, mut modulus) = (None, None, None, None);
    for field in body.split(',') {
        let Some((key, value)) = field.split_once('=') else {
            return err(format!("invalid field `{field}`"));
        };
        match key {
            "m" => m = value.parse::<usize>().ok(),
            "d" => d = value.parse::<u64>().ok(),
            "alpha" => {
                alpha_exp = match value.strip_prefix("g^") {
                    Some(e) => e.parse::<u64>().ok(),
                    None if value == "g" => Some(1),
                    None if value == "1" => Some(0),
                    None => None,
                }
            }
            "mod" => modulus = u32::from_str_radix(value.trim_start_matches("0x"), 16).ok(),
            _ => return err(format!("unknown key `{key}`")),
        }
    }
    let (Some(m), Some(d), Some(e)) = (m, d, alpha_exp) else {
        return err("monomial spec needs m=, d= and alpha=g^<e>");
    };
    if !(2..=16).contains(&m) {
        return err(format!("unsupported field degree {m}"));
    }
    let field = match modulus {
        Some(p) => FieldGf2m::new(m, p).map_err(|e| ParseError(e.to_string()))?,
        None => FieldGf2m::with_default_modulus(m),
    };
    let alpha = field.pow(field.a(), e);
    monomial_map(&field, d, alpha).map_err(|e| ParseError(e.to_string()))
}

/// h-selector: comma-separated `<weight>@<point>` per flat, weight 1 or 3,
/// point position 0..3 within the flat in index order.
pub fn parse_selector(spec: &str) -> PResult<Vec<HChoice>> {
    spec.split(',')
        .map(|tok| {
            let Some((w, p)) = tok.trim().split_once('@') else {
                return err(format!("invalid selector token `{tok}`"));
            };
            let weight_three = match w {
                "1" => false,
                "3" => true,
                _ => return err(format!("selector weight must be 1 or 3, got `{w}`")),
            };
            let Ok(point) = p.parse::<usize>() else {
                return err(format!("invalid point position `{p}`"));
            };
            Ok(HChoice {
                weight_three,
                point,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmm::sample_admissible_h;
    use crate::partitions::{enumerate_partitions, EnumMode};
    use crate::testdata::a0_a7;

    #[test]
    fn truth_table_round_trip() {
        let f = BooleanFunction::from_fn(5, |x| x % 3 == 1);
        let text = write_truth_table(&f);
        assert_eq!(parse_truth_table(&text).unwrap(), f);
        assert!(text.starts_with("n=5\n"));
    }

    #[test]
    fn truth_table_msb_convention() {
        // f(0) = 1 and nothing else: first hex digit 8
        let mut f = BooleanFunction::zero(2);
        f.set(0, true);
        assert_eq!(write_truth_table(&f), "n=2\n8\n");
    }

    #[test]
    fn truth_table_rejects_garbage() {
        assert!(parse_truth_table("n=2\nzz\n").is_err());
        assert!(parse_truth_table("n=3\nf\n").is_err()); // wrong length
        assert!(parse_truth_table("m=2\nf\n").is_err());
    }

    #[test]
    fn anf_round_trip() {
        let p = AnfPolynomial::new(4, [0b1100, 0b0011, 0]);
        let text = write_anf(&p);
        assert_eq!(text, "n=4\nx1*x2 + x3*x4 + 1\n");
        assert_eq!(parse_anf(&text).unwrap(), p);
        let zero = AnfPolynomial::new(3, []);
        assert_eq!(parse_anf(&write_anf(&zero)).unwrap(), zero);
    }

    #[test]
    fn function_autodetect() {
        let f = AnfPolynomial::new(4, [0b1100, 0b0011]).truth_table();
        assert_eq!(parse_function(&write_truth_table(&f)).unwrap(), f);
        assert_eq!(parse_function(&write_anf(&f.anf())).unwrap(), f);
    }

    #[test]
    fn partition_round_trip_with_comments() {
        let p = a0_a7();
        let text = format!("# example partition\n{}", write_partition(&p));
        assert_eq!(parse_partition(&text).unwrap(), p);
    }

    #[test]
    fn multi_partition_round_trip() {
        let ps = enumerate_partitions(2, EnumMode::Exhaustive).unwrap();
        let text = write_partitions(&ps);
        assert_eq!(parse_partitions(&text).unwrap(), ps);
    }

    #[test]
    fn partition_rejects_overlap() {
        let text = "000 001 010 011\n000 001 100 101\n";
        assert!(parse_partition(text).is_err());
    }

    #[test]
    fn map_round_trip() {
        let spec = "monomial:m=4,d=7,alpha=g^6";
        let pi = parse_pi_spec(spec).unwrap();
        assert!(pi.is_permutation());
        assert_eq!(parse_map(&write_map(&pi)).unwrap(), pi);
    }

    #[test]
    fn pi_spec_variants() {
        assert!(parse_pi_spec("monomial:m=5,d=14,alpha=1").is_ok());
        assert!(parse_pi_spec("monomial:m=4,d=7,alpha=g,mod=13").is_ok());
        assert!(parse_pi_spec("monomial:m=4,d=7,alpha=g,mod=10").is_err()); // reducible
        assert!(parse_pi_spec("monomial:m=4,d=7").is_err());
        assert!(parse_pi_spec("nonsense").is_err());
    }

    #[test]
    fn selector_parsing() {
        let sel = parse_selector("1@0,3@2").unwrap();
        assert_eq!(sel.len(), 2);
        assert!(!sel[0].weight_three);
        assert!(sel[1].weight_three);
        assert_eq!(sel[1].point, 2);
        assert!(parse_selector("2@0").is_err());
        assert!(parse_selector("1-0").is_err());
    }

    #[test]
    fn selector_builds_same_h_as_library() {
        let p = a0_a7();
        let sel = parse_selector("1@0,1@0,1@0,1@0,1@0,1@0,1@0,1@0").unwrap();
        let h = crate::gmm::admissible_h(&p, &sel).unwrap();
        assert_eq!(h.weight(), 8);
        let _ = sample_admissible_h(&p, 0);
    }
}

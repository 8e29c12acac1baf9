//! Text formats: graph files, builtin graph names, rationals, helper lists,
//! transcripts and the ensemble CSV.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;

use graphrepair_core::ensembles::TrialRecord;
use graphrepair_core::graph::named;
use graphrepair_core::repair::Transcript;
use graphrepair_core::{Graph, Rational, VertexId};
use num_bigint::BigInt;

use crate::error::CliError;

/// A graph given on the command line, with the name it was given under.
pub struct GraphSource {
    pub name: String,
    pub graph: Graph,
}

fn parse_num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, CliError> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Parse(format!("cannot read {what} from {s:?}")))
}

/// Builtin names: `star:D`, `path:D`, `complete:M`, `fig3:K`, `fig4`,
/// `fig2:N:K`. Anything else is read as a graph file.
pub fn load_graph(spec: &str) -> Result<GraphSource, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let arg = |i: usize| -> Result<usize, CliError> {
        let s = parts
            .get(i)
            .ok_or_else(|| CliError::Parse(format!("builtin {spec:?} needs a size")))?;
        parse_num(s, "a builtin size")
    };
    let graph = match parts[0] {
        "star" if parts.len() == 2 => named::star(arg(1)?),
        "path" if parts.len() == 2 => named::path(arg(1)?),
        "complete" if parts.len() == 2 => named::complete(arg(1)?),
        "fig3" if parts.len() == 2 => named::two_neighbour(arg(1)?),
        "fig4" if parts.len() == 1 => named::three_neighbour(),
        "fig2" if parts.len() == 3 => named::two_failure(arg(1)?, arg(2)?).0,
        _ => {
            let text = fs::read_to_string(spec)
                .map_err(|e| CliError::Parse(format!("cannot read graph file {spec:?}: {e}")))?;
            parse_graph(&text)?
        }
    };
    Ok(GraphSource {
        name: spec.to_string(),
        graph,
    })
}

/// Graph file: a line `n m`, then `m` lines `u v` with 0-based vertex ids.
/// Blank lines and lines starting with `#` are ignored.
pub fn parse_graph(text: &str) -> Result<Graph, CliError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| CliError::Parse("empty graph file".into()))?;
    let (n, m) = pair(header)?;
    let mut g = Graph::new(n);
    let mut count = 0;
    for line in lines {
        let (u, v) = pair(line)?;
        g.add_edge(u, v).map_err(|e| CliError::Parse(e.to_string()))?;
        count += 1;
    }
    if count != m {
        return Err(CliError::Parse(format!(
            "header announces {m} edges, file lists {count}"
        )));
    }
    Ok(g)
}

fn pair(line: &str) -> Result<(usize, usize), CliError> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(CliError::Parse(format!("expected two numbers, got {line:?}")));
    }
    Ok((
        parse_num(fields[0], "an integer")?,
        parse_num(fields[1], "an integer")?,
    ))
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

/// `p/q` or an integer.
pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let err = || CliError::Parse(format!("cannot read a rational from {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den == BigInt::from(0) {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// `auto` or a comma-separated list of vertex ids.
pub fn parse_helpers(s: &str) -> Result<Option<Vec<VertexId>>, CliError> {
    if s == "auto" {
        return Ok(None);
    }
    s.split(',')
        .map(|x| parse_num(x, "a vertex id"))
        .collect::<Result<_, _>>()
        .map(Some)
}

/// One `from to count` line per directed edge, then `total N`.
pub fn format_transcript<F: Copy>(t: &Transcript<F>) -> String {
    let mut s = String::new();
    for (u, v, log) in t.edges() {
        let _ = writeln!(s, "{u} {v} {}", log.count);
    }
    let _ = writeln!(s, "total {}", t.total());
    s
}

pub fn parse_transcript(text: &str) -> Result<Transcript<()>, CliError> {
    let mut counts = Vec::new();
    let mut total = None;
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["total", n] => total = Some(parse_num::<usize>(n, "a total")?),
            [u, v, c] => counts.push((
                parse_num(u, "a vertex")?,
                parse_num(v, "a vertex")?,
                parse_num(c, "a count")?,
            )),
            _ => return Err(CliError::Parse(format!("bad transcript line {line:?}"))),
        }
    }
    let t = Transcript::from_counts(counts);
    if let Some(n) = total {
        if n != t.total() {
            return Err(CliError::Parse(format!(
                "total {n} does not match the edge sum {}",
                t.total()
            )));
        }
    }
    Ok(t)
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    let mut f = fs::File::create(path)?;
    f.write_all(contents.as_bytes())?;
    Ok(())
}

pub const CSV_HEADER: &str = "trial,seed,n,param,d,k,t,feasible,beta_af,beta_ip";

pub fn format_csv(records: &[TrialRecord], n: usize, param: f64, d: usize, k: usize) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    let na = |x: &Option<Rational>| x.as_ref().map_or_else(|| "NA".to_string(), |v| v.to_string());
    for r in records {
        let t = if r.feasible { r.t.to_string() } else { "NA".into() };
        let _ = writeln!(
            s,
            "{},{},{n},{param},{d},{k},{t},{},{},{}",
            r.trial,
            r.seed,
            u8::from(r.feasible),
            na(&r.beta_af),
            na(&r.beta_ip)
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let g = named::three_neighbour();
        let back = parse_graph(&write_graph(&g)).unwrap();
        assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn graph_errors() {
        assert!(matches!(parse_graph(""), Err(CliError::Parse(_))));
        assert!(matches!(parse_graph("3 1\n0 0\n"), Err(CliError::Parse(_))));
        assert!(matches!(parse_graph("3 2\n0 1\n1 0\n"), Err(CliError::Parse(_))));
        assert!(matches!(parse_graph("3 2\n0 1\n"), Err(CliError::Parse(_))));
        assert!(matches!(parse_graph("3 1\n0 x\n"), Err(CliError::Parse(_))));
        assert!(parse_graph("# comment\n3 1\n\n0 2\n").is_ok());
    }

    #[test]
    fn builtins() {
        assert_eq!(load_graph("star:4").unwrap().graph.n(), 5);
        assert_eq!(load_graph("fig2:5:2").unwrap().graph.n(), 5);
        assert_eq!(load_graph("fig4").unwrap().graph.edge_count(), 18);
        assert!(load_graph("star:x").is_err());
        assert!(load_graph("/nonexistent/graph.txt").is_err());
    }

    #[test]
    fn rationals_and_helpers() {
        assert_eq!(parse_rational("27/4").unwrap().to_string(), "27/4");
        assert_eq!(parse_rational("3").unwrap().to_string(), "3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a").is_err());
        assert_eq!(parse_helpers("auto").unwrap(), None);
        assert_eq!(parse_helpers("1,2,3").unwrap(), Some(vec![1, 2, 3]));
        assert!(parse_helpers("1,,3").is_err());
    }

    #[test]
    fn transcript_round_trip() {
        let t: Transcript<()> = Transcript::from_counts([(1, 0, 3), (2, 1, 1)]);
        let text = format_transcript(&t);
        assert_eq!(text, "1 0 3\n2 1 1\ntotal 4\n");
        assert_eq!(parse_transcript(&text).unwrap().total(), 4);
        assert!(parse_transcript("1 0 3\ntotal 5\n").is_err());
    }
}

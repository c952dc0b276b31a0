//! Plain-text checkpoint of completed orbit levels.
//!
//! One line per orbit: `r <bitstring> <orbit size>`. Lines starting with `#`
//! are ignored. On load, only the prefix of levels `0, 1, …` whose orbit sizes
//! add up to `C(N, r)` is kept, so a run killed mid-write resumes cleanly.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use super::{binomial, bitstring, parse_bitstring, Orbit};
use crate::error::{Error, Result};

#[derive(Debug, Default)]
pub struct Checkpoint {
    pub levels: Vec<Vec<Orbit>>,
}

pub(super) struct Writer {
    out: BufWriter<File>,
}

impl Writer {
    pub(super) fn append(&mut self, level: &[Orbit], n: usize) -> Result<()> {
        for o in level {
            writeln!(self.out, "{} {} {}", o.r, bitstring(o.representative, n), o.size)?;
        }
        self.out.flush()?;
        Ok(())
    }
}

impl Checkpoint {
    pub fn load(path: &Path, n: usize) -> Result<Checkpoint> {
        let reader = BufReader::new(File::open(path)?);
        let mut levels: Vec<Vec<Orbit>> = Vec::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || Error::Parse(format!("{}:{}: malformed checkpoint line", path.display(), lineno + 1));
            let mut fields = line.split_whitespace();
            let (Some(r), Some(bits), Some(size), None) = (fields.next(), fields.next(), fields.next(), fields.next())
            else {
                return Err(bad());
            };
            let r: usize = r.parse().map_err(|_| bad())?;
            let size: u64 = size.parse().map_err(|_| bad())?;
            if bits.len() != n {
                return Err(Error::Parse(format!(
                    "{}:{}: checkpoint written for {} points, geometry has {n}",
                    path.display(),
                    lineno + 1,
                    bits.len()
                )));
            }
            let representative = parse_bitstring(bits).ok_or_else(bad)?;
            if representative.count_ones() as usize != r {
                return Err(bad());
            }
            if r > levels.len() {
                break;
            }
            if r == levels.len() {
                levels.push(Vec::new());
            }
            if r + 1 < levels.len() {
                return Err(bad());
            }
            levels[r].push(Orbit { r, representative, size });
        }
        let complete = levels
            .iter()
            .enumerate()
            .take_while(|(r, level)| level.iter().map(|o| o.size as u128).sum::<u128>() == binomial(n, *r))
            .count();
        levels.truncate(complete);
        Ok(Checkpoint { levels })
    }

    /// Rewrites `path` with the given complete levels and returns an appender.
    pub(super) fn writer(path: &Path, levels: &[Vec<Orbit>], n: usize) -> Result<Writer> {
        let mut w = Writer { out: BufWriter::new(File::create(path)?) };
        for level in levels {
            w.append(level, n)?;
        }
        Ok(w)
    }
}

//! `lsbm-weights v1` text format: header line, then one `label value` per
//! line in alphabet order.

use std::io::{BufRead, BufReader, BufWriter, Read, Write};

use crate::error::{Error, Result};
use crate::model::LabelAlphabet;
use crate::scalar::Scalar;
use crate::weights::WeightFunction;

pub const WEIGHTS_HEADER: &str = "lsbm-weights v1";

pub fn write_weights<T: Scalar, W: Write>(w: &WeightFunction<T>, alphabet: &LabelAlphabet, out: W) -> Result<()> {
    if w.len() != alphabet.len() {
        return Err(Error::LengthMismatch { left: w.len(), right: alphabet.len() });
    }
    let mut out = BufWriter::new(out);
    writeln!(out, "{WEIGHTS_HEADER}")?;
    for (l, &x) in alphabet.labels().zip(w.values()) {
        // `{:?}` on floats prints the shortest round-tripping form.
        writeln!(out, "{} {:?}", alphabet.token(l), x.as_f64())?;
    }
    out.flush()?;
    Ok(())
}

/// Reads weights; every label of `alphabet` must appear exactly once.
pub fn read_weights<T: Scalar, R: Read>(alphabet: &LabelAlphabet, input: R) -> Result<WeightFunction<T>> {
    let mut lines = BufReader::new(input).lines();
    match lines.next() {
        Some(Ok(h)) if h.trim_end() == WEIGHTS_HEADER => {}
        _ => return Err(Error::parse(1, format!("expected `{WEIGHTS_HEADER}`"))),
    }
    let mut values: Vec<Option<T>> = vec![None; alphabet.len()];
    for (i, line) in lines.enumerate() {
        let no = i + 2;
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((tok, val)) = line.split_once(char::is_whitespace) else {
            return Err(Error::parse(no, "expected `label value`"));
        };
        let l = alphabet.lookup(tok)?;
        let x: f64 = val.trim().parse().map_err(|_| Error::parse(no, format!("bad weight `{val}`")))?;
        if !x.is_finite() {
            return Err(Error::parse(no, "weight must be finite"));
        }
        if values[l.index()].replace(T::of(x)).is_some() {
            return Err(Error::parse(no, format!("label `{tok}` given twice")));
        }
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Error::parse(0, format!("missing weight for `{}`", alphabet.tokens()[i]))))
        .collect::<Result<Vec<T>>>()?;
    Ok(WeightFunction::new(values))
}

//! JSON channel and auxiliary files. Layout is documented in `docs/formats.md`.

use serde::{Deserialize, Serialize};

use crate::probkit::{Auxiliary, CondKernel, FinitePmf, SdWtc, StateFactors, STOCHASTIC_TOL};

use super::GalleryError;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChannelAlphabets {
    #[serde(rename = "S")]
    s: usize,
    #[serde(rename = "X")]
    x: usize,
    #[serde(rename = "Y")]
    y: usize,
    #[serde(rename = "Z")]
    z: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChannelFile {
    alphabets: ChannelAlphabets,
    state: Vec<f64>,
    channel: Vec<Vec<Vec<Vec<f64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    factors: Option<StateFactors>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AuxAlphabets {
    #[serde(rename = "U")]
    u: usize,
    #[serde(rename = "V")]
    v: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AuxFile {
    alphabets: AuxAlphabets,
    kernel: Vec<Vec<f64>>,
}

fn syntax(e: serde_json::Error) -> GalleryError {
    GalleryError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn expect_len(what: &str, expected: usize, found: usize) -> Result<(), GalleryError> {
    if expected == found {
        Ok(())
    } else {
        Err(GalleryError::Shape(format!("{what}: expected {expected} entries, found {found}")))
    }
}

fn check_row(what: &'static str, index: Vec<usize>, row: &[f64]) -> Result<(), GalleryError> {
    let sum: f64 = row.iter().sum();
    if row.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) || (sum - 1.0).abs() > STOCHASTIC_TOL {
        return Err(GalleryError::NotStochastic { what, index, sum });
    }
    Ok(())
}

pub fn parse_channel_spec(text: &str) -> Result<SdWtc, GalleryError> {
    let f: ChannelFile = serde_json::from_str(text).map_err(syntax)?;
    let a = &f.alphabets;
    expect_len("state", a.s, f.state.len())?;
    check_row("state", vec![], &f.state)?;
    expect_len("channel", a.s, f.channel.len())?;
    let mut rows = Vec::with_capacity(a.s * a.x);
    for (s, per_x) in f.channel.iter().enumerate() {
        expect_len(&format!("channel[{s}]"), a.x, per_x.len())?;
        for (x, per_y) in per_x.iter().enumerate() {
            expect_len(&format!("channel[{s}][{x}]"), a.y, per_y.len())?;
            let mut row = Vec::with_capacity(a.y * a.z);
            for (y, per_z) in per_y.iter().enumerate() {
                expect_len(&format!("channel[{s}][{x}][{y}]"), a.z, per_z.len())?;
                row.extend_from_slice(per_z);
            }
            check_row("channel", vec![s, x], &row)?;
            rows.push(row);
        }
    }
    let kernel = CondKernel::new(vec![a.s, a.x], a.y * a.z, rows)?;
    let wtc = SdWtc::new(FinitePmf::new(f.state)?, kernel, a.y, a.z)?;
    match f.factors {
        Some(fa) => Ok(wtc.with_factors(fa)?),
        None => Ok(wtc),
    }
}

pub fn emit_channel_spec(w: &SdWtc) -> String {
    let (cs, cx, cy, cz) = (w.card_s(), w.card_x(), w.card_y(), w.card_z());
    let channel = (0..cs)
        .map(|s| {
            (0..cx)
                .map(|x| (0..cy).map(|y| (0..cz).map(|z| w.prob(s, x, y, z)).collect()).collect())
                .collect()
        })
        .collect();
    let f = ChannelFile {
        alphabets: ChannelAlphabets { s: cs, x: cx, y: cy, z: cz },
        state: w.state_law().probs().to_vec(),
        channel,
        factors: w.factors(),
    };
    serde_json::to_string_pretty(&f).expect("plain data serializes")
}

/// `|X|` is inferred from the row length `|U||V||X|`.
pub fn parse_aux_spec(text: &str) -> Result<Auxiliary, GalleryError> {
    let f: AuxFile = serde_json::from_str(text).map_err(syntax)?;
    let (cu, cv) = (f.alphabets.u, f.alphabets.v);
    if cu == 0 || cv == 0 || f.kernel.is_empty() {
        return Err(GalleryError::Shape("auxiliary alphabets and kernel must be nonempty".into()));
    }
    let len = f.kernel[0].len();
    if len == 0 || len % (cu * cv) != 0 {
        return Err(GalleryError::Shape(format!(
            "kernel row length {len} is not a multiple of |U||V| = {}",
            cu * cv
        )));
    }
    for (s, row) in f.kernel.iter().enumerate() {
        expect_len(&format!("kernel[{s}]"), len, row.len())?;
        check_row("kernel", vec![s], row)?;
    }
    let cs = f.kernel.len();
    let k = CondKernel::new(vec![cs], len, f.kernel)?;
    Ok(Auxiliary::new(cu, cv, len / (cu * cv), k)?)
}

pub fn emit_aux_spec(a: &Auxiliary) -> String {
    let f = AuxFile {
        alphabets: AuxAlphabets {
            u: a.card_u(),
            v: a.card_v(),
        },
        kernel: a.kernel().rows().iter().map(|r| r.probs().to_vec()).collect(),
    };
    serde_json::to_string_pretty(&f).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_row_is_rejected_with_its_index() {
        let text = r#"{"alphabets":{"S":1,"X":2,"Y":1,"Z":2},
            "state":[1.0],
            "channel":[[[[0.5,0.5]],[[0.5,0.4]]]]}"#;
        match parse_channel_spec(text) {
            Err(GalleryError::NotStochastic { index, .. }) => assert_eq!(index, vec![0, 1]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_channel_spec("{\n  \"alphabets\": }") {
            Err(GalleryError::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_channel_spec(r#"{"alphabets":{"S":1,"X":1,"Y":1,"Z":1},"state":[1],"channel":[[[[1]]]]} x"#).is_err());
    }
}

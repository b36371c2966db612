//! Parsing of complex scalars and component lists from the command line.
//!
//! Accepted component forms: `3`, `-2.5`, `5i`, `-0.5i`, `i`, `-i`, and the
//! combined `3+4i` / `3-4i`.

use anyhow::{bail, Context, Result};
use rmpkit_core::{c64, FourVector, WaveVector, C64};

pub fn parse_complex(raw: &str) -> Result<C64> {
    let s = raw.trim();
    if s.is_empty() {
        bail!("empty complex component");
    }
    if let Some(im_str) = s.strip_suffix(['i', 'I']) {
        // split a possible real part off the front: a+bi / a-bi
        // scan for a sign that is not the leading one and not part of an exponent
        let bytes = im_str.as_bytes();
        let mut split = None;
        for (idx, ch) in im_str.char_indices().skip(1) {
            if (ch == '+' || ch == '-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                split = Some(idx);
            }
        }
        let (re_part, im_part) = match split {
            Some(idx) => (&im_str[..idx], &im_str[idx..]),
            None => ("", im_str),
        };
        let re = if re_part.is_empty() {
            0.0
        } else {
            re_part
                .parse::<f64>()
                .with_context(|| format!("bad real part in {raw:?}"))?
        };
        let im = match im_part {
            "" | "+" => 1.0,
            "-" => -1.0,
            other => other
                .parse::<f64>()
                .with_context(|| format!("bad imaginary part in {raw:?}"))?,
        };
        Ok(c64(re, im))
    } else {
        let re = s
            .parse::<f64>()
            .with_context(|| format!("bad real component {raw:?}"))?;
        Ok(c64(re, 0.0))
    }
}

pub fn parse_complex_list<const N: usize>(raw: &str) -> Result<[C64; N]> {
    let parts: Vec<&str> = raw.split(',').collect();
    if parts.len() != N {
        bail!(
            "expected {N} comma-separated components, got {}",
            parts.len()
        );
    }
    let mut out = [C64::default(); N];
    for (i, part) in parts.iter().enumerate() {
        out[i] = parse_complex(part)?;
    }
    Ok(out)
}

pub fn parse_wavevector(raw: &str) -> Result<WaveVector> {
    Ok(WaveVector::new(FourVector::new(parse_complex_list::<4>(
        raw,
    )?)))
}

/// Parses `axis,value` pairs like `1,0.3` for boosts and rotations.
pub fn parse_axis_value(raw: &str) -> Result<(usize, f64)> {
    let (axis_str, value_str) = raw
        .split_once(',')
        .context("expected axis,value (for example 1,0.3)")?;
    let axis: usize = axis_str.trim().parse().context("bad axis")?;
    if !(1..=3).contains(&axis) {
        bail!("axis must be 1, 2 or 3, got {axis}");
    }
    let value: f64 = value_str.trim().parse().context("bad value")?;
    Ok((axis, value))
}

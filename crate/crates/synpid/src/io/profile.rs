use std::io::{BufRead, Write};

use synpid_core::dynamics::LocalProfile;

/// Affine map between 16-bit gray levels and profile values:
/// `value = offset + gray * scale`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrayMapping {
    pub offset: f64,
    pub scale: f64,
}

impl GrayMapping {
    pub fn for_range(min: f64, max: f64) -> Self {
        let scale = if max > min {
            (max - min) / 65535.0
        } else {
            0.0
        };
        Self { offset: min, scale }
    }

    pub fn gray(&self, value: f64) -> u16 {
        if self.scale == 0.0 {
            return 0;
        }
        ((value - self.offset) / self.scale)
            .round()
            .clamp(0.0, 65535.0) as u16
    }

    pub fn value(&self, gray: u16) -> f64 {
        self.offset + f64::from(gray) * self.scale
    }
}

/// `cell,time,value` rows for every defined site, time-major.
pub fn write_profile_csv(profile: &LocalProfile, mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "cell,time,value")?;
    for (n, v) in profile.values.iter().enumerate() {
        let time = profile.first_time + n / profile.width;
        writeln!(out, "{},{},{}", n % profile.width, time, v)?;
    }
    out.flush()
}

/// 16-bit binary PGM (`P5`, maxval 65535, big-endian samples) of the defined
/// rows of the profile. Gray 0 is the minimum value and 65535 the maximum;
/// the mapping is written as a `# value = <offset> + gray * <scale>` comment.
pub fn write_profile_pgm(
    profile: &LocalProfile,
    mut out: impl Write,
) -> std::io::Result<GrayMapping> {
    let (min, max) = profile
        .values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let mapping = if profile.values.is_empty() {
        GrayMapping::for_range(0.0, 0.0)
    } else {
        GrayMapping::for_range(min, max)
    };
    let rows = profile.values.len() / profile.width.max(1);
    write!(
        out,
        "P5\n# measure {} k {} first_time {}\n# value = {:e} + gray * {:e}\n{} {}\n65535\n",
        profile.measure,
        profile.k,
        profile.first_time,
        mapping.offset,
        mapping.scale,
        profile.width,
        rows
    )?;
    for &v in &profile.values {
        out.write_all(&mapping.gray(v).to_be_bytes())?;
    }
    out.flush()?;
    Ok(mapping)
}

/// Recovers the value mapping from a profile PGM header.
pub fn read_profile_pgm_mapping(input: impl BufRead) -> Option<GrayMapping> {
    for line in input.split(b'\n').take(4) {
        let line = String::from_utf8(line.ok()?).ok()?;
        if let Some(rest) = line.strip_prefix("# value = ") {
            let (offset, scale) = rest.split_once(" + gray * ")?;
            return Some(GrayMapping {
                offset: offset.trim().parse().ok()?,
                scale: scale.trim().parse().ok()?,
            });
        }
    }
    None
}

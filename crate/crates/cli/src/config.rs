use clap::{Args, ValueEnum};
use fraccal::precision::Precision;
use fraccal::{Complex64 as C, Error, Result};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PrecisionMode {
    Double,
    Extended,
}

impl From<PrecisionMode> for Precision {
    fn from(p: PrecisionMode) -> Self {
        match p {
            PrecisionMode::Double => Precision::Double,
            PrecisionMode::Extended => Precision::Extended,
        }
    }
}

/// Options shared by all commands.
#[derive(Args, Clone, Debug, Serialize)]
pub struct RunConfig {
    /// Residual tolerance for pass/fail decisions
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Series truncation order
    #[arg(long = "truncation", short = 'N', global = true, default_value_t = 64)]
    pub truncation: usize,
    #[arg(long, global = true, value_enum, default_value_t = PrecisionMode::Double)]
    pub precision: PrecisionMode,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for the randomized cases
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Write the output to this file instead of stdout
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<std::path::PathBuf>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol >= 1e-14) {
            return Err(Error::Precondition(format!("--tol {} is below 1e-14", self.tol)));
        }
        if self.truncation == 0 {
            return Err(Error::Precondition("--truncation must be positive".into()));
        }
        Ok(())
    }
}

/// Parses `1.5`, `-2i`, `0.3+0.2i`, `1e-3-4i`.
pub fn parse_complex(s: &str) -> std::result::Result<C, String> {
    let s = s.trim().replace(' ', "");
    let bad = || format!("cannot parse '{s}' as a complex number");
    if let Some(body) = s.strip_suffix('i') {
        let bytes = body.as_bytes();
        let split = (1..bytes.len()).rev().find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            x => x,
        };
        let re: f64 = re.parse().map_err(|_| bad())?;
        let im: f64 = im.parse().map_err(|_| bad())?;
        Ok(C::new(re, im))
    } else {
        s.parse::<f64>().map(|x| C::new(x, 0.0)).map_err(|_| bad())
    }
}

/// Parses an inclusive range `start:stop:step`, or a single value.
pub fn parse_range(s: &str) -> std::result::Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |x: &str| x.trim().parse::<f64>().map_err(|_| format!("bad number '{x}' in range '{s}'"));
    match parts.as_slice() {
        [x] => Ok(vec![num(x)?]),
        [a, b, h] => {
            let (a, b, h) = (num(a)?, num(b)?, num(h)?);
            if !(h > 0.0) || b < a {
                return Err(format!("range '{s}' needs start <= stop and a positive step"));
            }
            let n = ((b - a) / h + 1e-9).floor() as usize;
            Ok((0..=n).map(|k| a + k as f64 * h).collect())
        }
        _ => Err(format!("range '{s}' must be start:stop:step")),
    }
}

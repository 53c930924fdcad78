//! `key = value` files overriding the numerical tolerances.

use std::path::Path;

use anyhow::{bail, Context, Result};
use exstat::Tolerances;

/// Tolerance fields that may be set from a file or flags; unset fields
/// fall through to the next layer.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ToleranceOverrides {
    pub root_abs: Option<f64>,
    pub quad_abs: Option<f64>,
    pub series_tail: Option<f64>,
    pub max_iter: Option<usize>,
}

impl ToleranceOverrides {
    pub fn parse(text: &str) -> Result<Self> {
        let mut o = ToleranceOverrides::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .with_context(|| format!("line {}: expected key=value, got {raw:?}", i + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let real = || value.parse::<f64>().with_context(|| format!("line {}: bad number {value:?}", i + 1));
            match key {
                "root_abs" => o.root_abs = Some(real()?),
                "quad_abs" => o.quad_abs = Some(real()?),
                "series_tail" => o.series_tail = Some(real()?),
                "max_iter" => {
                    o.max_iter =
                        Some(value.parse().with_context(|| format!("line {}: bad integer {value:?}", i + 1))?)
                }
                other => bail!("line {}: unknown key {other:?}", i + 1),
            }
        }
        Ok(o)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    /// `self` wins over `lower` field by field.
    pub fn over(self, lower: ToleranceOverrides) -> ToleranceOverrides {
        ToleranceOverrides {
            root_abs: self.root_abs.or(lower.root_abs),
            quad_abs: self.quad_abs.or(lower.quad_abs),
            series_tail: self.series_tail.or(lower.series_tail),
            max_iter: self.max_iter.or(lower.max_iter),
        }
    }

    pub fn apply(self, base: Tolerances) -> Tolerances {
        Tolerances {
            root_abs: self.root_abs.unwrap_or(base.root_abs),
            quad_abs: self.quad_abs.unwrap_or(base.quad_abs),
            series_tail: self.series_tail.unwrap_or(base.series_tail),
            max_iter: self.max_iter.unwrap_or(base.max_iter),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_layers() {
        let file = ToleranceOverrides::parse("# tolerances\nroot_abs = 1e-13\nmax_iter=50\n\n").unwrap();
        let flags = ToleranceOverrides { root_abs: Some(1e-9), ..Default::default() };
        let tol = flags.over(file).apply(Tolerances::default());
        assert_eq!(tol.root_abs, 1e-9);
        assert_eq!(tol.max_iter, 50);
        assert_eq!(tol.quad_abs, Tolerances::default().quad_abs);
    }

    #[test]
    fn rejects_garbage() {
        assert!(ToleranceOverrides::parse("colour = blue").is_err());
        assert!(ToleranceOverrides::parse("root_abs").is_err());
        assert!(ToleranceOverrides::parse("max_iter = 1.5").is_err());
    }
}

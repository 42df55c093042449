//! CSV data behind the five figures.

use std::f64::consts::E;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use wprime::lambert_w::BRANCH_POINT;
use wprime::{pi_lower_power, pi_upper, pn_lower, pn_upper, w0, wm1, PrimeTable, Result};

use crate::format::{opt_real, real};

/// Samples of the branch figure on `[-1/e, 4]`, endpoints included.
pub const W_SAMPLES: usize = 401;
const W_RIGHT: f64 = 4.0;

pub const FILES: [&str; 5] = [
    "figure1.csv",
    "figure2.csv",
    "figure3.csv",
    "figure4.csv",
    "figureW.csv",
];

/// One generated file: name and contents.
pub struct Csv {
    pub name: &'static str,
    pub body: String,
    pub rows: usize,
}

impl Csv {
    fn new(name: &'static str, header: &str) -> Self {
        Csv {
            name,
            body: format!("{header}\n"),
            rows: 0,
        }
    }

    fn row(&mut self, fields: &[String]) {
        let _ = writeln!(self.body, "{}", fields.join(","));
        self.rows += 1;
    }

    pub fn write_to(&self, dir: &Path) -> std::io::Result<PathBuf> {
        let path = dir.join(self.name);
        std::fs::write(&path, &self.body)?;
        Ok(path)
    }
}

/// `x = 0.5, 1.0, …, xmax`.
pub fn half_steps(xmax: u64) -> impl Iterator<Item = f64> {
    (1..=2 * xmax).map(|k| k as f64 * 0.5)
}

/// Grid of the branch figure.
pub fn branch_grid() -> impl Iterator<Item = f64> {
    let last = W_SAMPLES - 1;
    (0..W_SAMPLES).map(move |k| {
        if k == last {
            W_RIGHT
        } else {
            BRANCH_POINT + (W_RIGHT - BRANCH_POINT) * k as f64 / last as f64
        }
    })
}

/// Build all five tables. `table` must cover `xmax` and `nmax` primes.
pub fn generate(table: &PrimeTable, xmax: u64, nmax: u64) -> Result<Vec<Csv>> {
    let e1 = (-1.0f64).exp();
    let e3 = (-3.0f64).exp();

    let mut fig1 = Csv::new(FILES[0], "x,pi,upper");
    let mut fig2 = Csv::new(FILES[1], "x,pi,upper,lower_eps_inv_e,lower_eps_inv_e3");
    for x in half_steps(xmax) {
        let pi = table.pi_of(x)?.to_string();
        let upper = real(pi_upper(x)?);
        fig1.row(&[real(x), pi.clone(), upper.clone()]);
        fig2.row(&[
            real(x),
            pi,
            upper,
            real(pi_lower_power(x, e1)?),
            real(pi_lower_power(x, e3)?),
        ]);
    }

    let mut fig3 = Csv::new(FILES[2], "n,p_n,upper_thm5,upper_cor3");
    let mut fig4 = Csv::new(FILES[3], "n,p_n,lower_thm8");
    for n in 1..=nmax {
        let p = table.nth_prime(n)?.to_string();
        let thm5 = if n >= 4 {
            Some(pn_upper(n, 0.0)?)
        } else {
            None
        };
        fig3.row(&[
            n.to_string(),
            p.clone(),
            opt_real(thm5),
            real(pn_upper(n, E)?),
        ]);
        let thm8 = if n >= 14 { Some(pn_lower(n)?) } else { None };
        fig4.row(&[n.to_string(), p, opt_real(thm8)]);
    }

    let mut fig_w = Csv::new(FILES[4], "x,w0,wm1");
    for x in branch_grid() {
        let lower = if x < 0.0 { Some(wm1(x)?.value) } else { None };
        fig_w.row(&[real(x), real(w0(x)?.value), opt_real(lower)]);
    }

    Ok(vec![fig1, fig2, fig3, fig4, fig_w])
}

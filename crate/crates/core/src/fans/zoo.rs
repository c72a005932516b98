use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::Fan;
use crate::exactla::subsets;
use crate::{Error, Result};

pub fn projective_space(n: usize) -> Fan {
    let mut rays: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    if n == 0 {
        return torus(0);
    }
    rays.push(vec![-1; n]);
    Fan::new(n, rays, &subsets(n + 1, n)).expect("projective space fan")
}

pub fn affine_space(n: usize) -> Fan {
    let rays: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    Fan::new(n, rays, &[(0..n).collect()]).expect("affine space fan")
}

pub fn torus(n: usize) -> Fan {
    Fan::new(n, Vec::new(), &[]).expect("torus fan")
}

/// Rays `e₁, e₂, −e₁ + a·e₂, −e₂`.
pub fn hirzebruch(a: i64) -> Fan {
    let rays = vec![vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]];
    Fan::new(2, rays, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]]).expect("Hirzebruch fan")
}

pub fn blowup_p2() -> Fan {
    projective_space(2).star_subdivision(&[1, 1]).expect("e₁+e₂ lies in the support")
}

/// Parses a built-in fan name.
///
/// Accepted forms: `projective_space(n)`, `pN`, `affine_space(n)`, `torus(n)`,
/// `hirzebruch(a)`, `blowup_p2`, `product(f,g)` and `f x g` shorthand such as `p1xp1`.
pub fn builtin(name: &str) -> Result<Fan> {
    let cleaned: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { s: cleaned.as_bytes(), pos: 0, original: name };
    let fan = p.product_expr()?;
    if p.pos != p.s.len() {
        return Err(p.error());
    }
    Ok(fan)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    original: &'a str,
}

impl Parser<'_> {
    fn error(&self) -> Error {
        Error::UnknownBuiltin(self.original.to_string())
    }

    fn product_expr(&mut self) -> Result<Fan> {
        let mut f = self.atom()?;
        while self.peek() == Some(b'x') || self.peek() == Some(b'*') {
            self.pos += 1;
            let g = self.atom()?;
            f = f.product(&g);
        }
        Ok(f)
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn ident(&mut self) -> &str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            // 'x' separates factors only right after a digit, as in p1xp1.
            if c == b'x' && self.pos > start && self.s[self.pos - 1].is_ascii_digit() {
                break;
            }
            if c.is_ascii_alphanumeric() || c == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        core::str::from_utf8(&self.s[start..self.pos]).unwrap_or("")
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error())
        }
    }

    fn int_arg(&mut self) -> Result<i64> {
        self.expect(b'(')?;
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let v = core::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse::<i64>().ok())
            .ok_or_else(|| self.error())?;
        self.expect(b')')?;
        Ok(v)
    }

    fn dim_arg(&mut self) -> Result<usize> {
        let v = self.int_arg()?;
        usize::try_from(v).ok().filter(|&d| d <= 8).ok_or_else(|| self.error())
    }

    fn atom(&mut self) -> Result<Fan> {
        let id = self.ident().to_string();
        match id.as_str() {
            "projective_space" => Ok(projective_space(self.dim_arg()?)),
            "affine_space" => Ok(affine_space(self.dim_arg()?)),
            "torus" => Ok(torus(self.dim_arg()?)),
            "hirzebruch" => Ok(hirzebruch(self.int_arg()?)),
            "blowup_p2" => Ok(blowup_p2()),
            "product" => {
                self.expect(b'(')?;
                let f = self.product_expr()?;
                self.expect(b',')?;
                let g = self.product_expr()?;
                self.expect(b')')?;
                Ok(f.product(&g))
            }
            _ => {
                let n = id
                    .strip_prefix('p')
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&d| (1..=8).contains(&d))
                    .ok_or_else(|| Error::UnknownBuiltin(self.original.to_string()))?;
                Ok(projective_space(n))
            }
        }
    }
}

//! Minimal SVG writer. Every coordinate starts as an exact rational and is
//! rounded to two decimals only when written out.

use std::fmt::Write;

use lattice_centers::{LatticePoint, RationalPoint};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

const UNIT: i64 = 40;

enum Item {
    Polygon(Vec<RationalPoint>, &'static str),
    Segment(RationalPoint, RationalPoint, &'static str),
    Circle(RationalPoint, BigRational, &'static str),
    Dot(RationalPoint, String),
}

#[derive(Default)]
pub struct Figure {
    items: Vec<Item>,
    grid: bool,
}

/// Rounds `q` to two decimals, half away from zero.
pub fn fixed2(q: &BigRational) -> String {
    let scaled = q * BigRational::from_integer(100.into());
    let (n, d): (BigInt, BigInt) = (scaled.numer().abs(), scaled.denom().clone());
    let r = (&n + &n + &d).div_floor(&(&d + &d));
    let (int, frac) = r.div_rem(&BigInt::from(100));
    let sign = if q.is_negative() && !r.is_zero() { "-" } else { "" };
    format!("{sign}{int}.{frac:02}")
}

fn lattice(p: &LatticePoint) -> RationalPoint {
    RationalPoint::from_lattice(p)
}

impl Figure {
    pub fn new() -> Self {
        Figure {
            items: Vec::new(),
            grid: true,
        }
    }

    pub fn triangle(&mut self, v: &[LatticePoint; 3]) -> &mut Self {
        self.items
            .push(Item::Polygon(v.iter().map(lattice).collect(), "#c6d8f5"));
        self
    }

    pub fn segment(&mut self, a: RationalPoint, b: RationalPoint) -> &mut Self {
        self.items.push(Item::Segment(a, b, "#2050c0"));
        self
    }

    pub fn circle(&mut self, center: RationalPoint, radius_squared: BigRational) -> &mut Self {
        self.items.push(Item::Circle(center, radius_squared, "#000000"));
        self
    }

    pub fn dot(&mut self, p: RationalPoint, label: impl Into<String>) -> &mut Self {
        self.items.push(Item::Dot(p, label.into()));
        self
    }

    /// Integer bounding box of everything drawn, with one unit of margin.
    fn bounds(&self) -> [BigInt; 4] {
        let mut xs: Vec<BigRational> = Vec::new();
        let mut ys: Vec<BigRational> = Vec::new();
        let mut add = |p: &RationalPoint, r: BigRational| {
            xs.push(&p.x - &r);
            xs.push(&p.x + &r);
            ys.push(&p.y - &r);
            ys.push(&p.y + &r);
        };
        for item in &self.items {
            match item {
                Item::Polygon(ps, _) => ps.iter().for_each(|p| add(p, BigRational::zero())),
                Item::Segment(a, b, _) => {
                    add(a, BigRational::zero());
                    add(b, BigRational::zero());
                }
                Item::Circle(c, r2, _) => {
                    let r = BigRational::from_integer(r2.ceil().to_integer().sqrt() + 1);
                    add(c, r);
                }
                Item::Dot(p, _) => add(p, BigRational::zero()),
            }
        }
        let lo = |v: &[BigRational]| v.iter().min().expect("nonempty figure").floor().to_integer() - 1;
        let hi = |v: &[BigRational]| v.iter().max().expect("nonempty figure").ceil().to_integer() + 1;
        [lo(&xs), lo(&ys), hi(&xs), hi(&ys)]
    }

    pub fn render(&self, title: &str) -> String {
        let [x0, y0, x1, y1] = self.bounds();
        let unit = BigRational::from_integer(UNIT.into());
        let (ox, oy) = (BigRational::from_integer(x0.clone()), BigRational::from_integer(y1.clone()));
        let px = |p: &RationalPoint| {
            (
                fixed2(&((&p.x - &ox) * &unit)),
                fixed2(&((&oy - &p.y) * &unit)),
            )
        };
        let width = (&x1 - &x0) * UNIT;
        let height = (&y1 - &y0) * UNIT;
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
        );
        let _ = writeln!(s, "<title>{title}</title>");
        let _ = writeln!(s, r#"<rect width="{width}" height="{height}" fill="white"/>"#);
        if self.grid {
            let mut x = x0.clone();
            while x <= x1 {
                let gx = (&x - &x0) * UNIT;
                let _ = writeln!(
                    s,
                    r##"<line x1="{gx}" y1="0" x2="{gx}" y2="{height}" stroke="#dddddd" stroke-dasharray="2,3"/>"##
                );
                x += 1;
            }
            let mut y = y0.clone();
            while y <= y1 {
                let gy = (&y1 - &y) * UNIT;
                let _ = writeln!(
                    s,
                    r##"<line x1="0" y1="{gy}" x2="{width}" y2="{gy}" stroke="#dddddd" stroke-dasharray="2,3"/>"##
                );
                y += 1;
            }
        }
        for item in &self.items {
            match item {
                Item::Polygon(ps, fill) => {
                    let pts: Vec<String> = ps
                        .iter()
                        .map(|p| {
                            let (x, y) = px(p);
                            format!("{x},{y}")
                        })
                        .collect();
                    let _ = writeln!(
                        s,
                        r##"<polygon points="{}" fill="{fill}" stroke="#2050c0" stroke-width="2"/>"##,
                        pts.join(" ")
                    );
                }
                Item::Segment(a, b, color) => {
                    let ((ax, ay), (bx, by)) = (px(a), px(b));
                    let _ = writeln!(
                        s,
                        r#"<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" stroke="{color}" stroke-width="1.5"/>"#
                    );
                }
                Item::Circle(c, r2, color) => {
                    let (cx, cy) = px(c);
                    // radius in pixels to two decimals: isqrt(r2 * UNIT^2 * 10^4) / 100
                    let scaled = r2 * BigRational::from_integer((UNIT * UNIT * 10_000).into());
                    let root = (scaled.numer() / scaled.denom()).sqrt();
                    let r = fixed2(&BigRational::new(root, 100.into()));
                    let _ = writeln!(
                        s,
                        r#"<circle cx="{cx}" cy="{cy}" r="{r}" fill="none" stroke="{color}" stroke-width="1.5"/>"#
                    );
                }
                Item::Dot(p, label) => {
                    let (x, y) = px(p);
                    let _ = writeln!(s, r#"<circle cx="{x}" cy="{y}" r="3" fill="black"/>"#);
                    if !label.is_empty() {
                        let _ = writeln!(
                            s,
                            r#"<text x="{x}" y="{y}" dx="5" dy="-5" font-family="serif" font-size="14">{label}</text>"#
                        );
                    }
                }
            }
        }
        s.push_str("</svg>\n");
        s
    }
}

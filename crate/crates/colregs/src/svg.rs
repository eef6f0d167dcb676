//! Static SVG plots. North is up and East to the right.

use std::fmt::Write;

use colregs_core::encounter::CompliantRegion;
use colregs_core::geom::Point;
use colregs_core::planner::{PlanTree, Scenario, Strategy, Waypoint};

use crate::bench::{Campaign, StrategySummary};

const SIZE: f64 = 800.0;
const PAD: f64 = 40.0;

const PALETTE: [&str; 4] = ["#d62728", "#ff7f0e", "#1f77b4", "#2ca02c"];

fn color(strategy: Strategy) -> &'static str {
    PALETTE[strategy.index() as usize % PALETTE.len()]
}

/// Maps world (north, east) meters onto a square canvas with equal scales.
struct Frame {
    min_e: f64,
    max_n: f64,
    scale: f64,
}

impl Frame {
    fn fit(points: impl IntoIterator<Item = Point>) -> Frame {
        let (mut lo, mut hi) = (
            Point::new(f64::INFINITY, f64::INFINITY),
            Point::new(-f64::INFINITY, -f64::INFINITY),
        );
        for p in points {
            lo = Point::new(lo.north.min(p.north), lo.east.min(p.east));
            hi = Point::new(hi.north.max(p.north), hi.east.max(p.east));
        }
        let span = (hi.north - lo.north).max(hi.east - lo.east).max(1.0);
        let mid = lo.lerp(hi, 0.5);
        Frame {
            min_e: mid.east - 0.5 * span,
            max_n: mid.north + 0.5 * span,
            scale: (SIZE - 2.0 * PAD) / span,
        }
    }

    fn x(&self, p: Point) -> f64 {
        PAD + (p.east - self.min_e) * self.scale
    }

    fn y(&self, p: Point) -> f64 {
        PAD + (self.max_n - p.north) * self.scale
    }

    fn len(&self, meters: f64) -> f64 {
        meters * self.scale
    }
}

fn open(out: &mut String, width: f64, height: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
}

fn polyline(out: &mut String, frame: &Frame, pts: &[Point], stroke: &str, width: f64, extra: &str) {
    let coords: Vec<String> = pts
        .iter()
        .map(|&p| format!("{:.2},{:.2}", frame.x(p), frame.y(p)))
        .collect();
    let _ = writeln!(
        out,
        r#"<polyline points="{}" fill="none" stroke="{stroke}" stroke-width="{width}" {extra}/>"#,
        coords.join(" ")
    );
}

/// Outline of the region: outer arc, inner arc and the closing radial edges.
fn region_outline(region: &CompliantRegion, steps: usize) -> (Vec<Point>, Vec<Point>) {
    let arc = region.allowed_arc;
    let ring = |r: f64| -> Vec<Point> {
        (0..=steps)
            .map(|k| region.center.offset(arc.at(k as f64 / steps as f64), r))
            .collect()
    };
    let outer = ring(region.r_max);
    let inner = if region.r_min > 0.0 {
        ring(region.r_min)
    } else {
        Vec::new()
    };
    (outer, inner)
}

fn draw_region(out: &mut String, frame: &Frame, region: &CompliantRegion) {
    let (outer, inner) = region_outline(region, 180);
    let mut boundary = outer.clone();
    if !region.allowed_arc.is_full() {
        boundary.extend(inner.iter().rev().copied());
        if inner.is_empty() {
            boundary.push(region.center);
        }
        boundary.push(outer[0]);
    }
    let coords: Vec<String> = boundary
        .iter()
        .map(|&p| format!("{:.2},{:.2}", frame.x(p), frame.y(p)))
        .collect();
    let _ = writeln!(
        out,
        r##"<polygon points="{}" fill="#e8f4e8" stroke="#5a9a5a" stroke-width="1"/>"##,
        coords.join(" ")
    );
    if region.r_min > 0.0 {
        let _ = writeln!(
            out,
            r##"<circle cx="{:.2}" cy="{:.2}" r="{:.2}" fill="#f6dede" stroke="#b55" stroke-dasharray="4 3"/>"##,
            frame.x(region.center),
            frame.y(region.center),
            frame.len(region.r_min)
        );
    }
}

fn dot(out: &mut String, frame: &Frame, p: Point, r: f64, fill: &str) {
    let _ = writeln!(
        out,
        r#"<circle cx="{:.2}" cy="{:.2}" r="{r}" fill="{fill}"/>"#,
        frame.x(p),
        frame.y(p)
    );
}

fn label(out: &mut String, x: f64, y: f64, text: &str) {
    let _ = writeln!(out, r#"<text x="{x:.1}" y="{y:.1}">{text}</text>"#);
}

/// Region, tree edges, nominal route, target track and the planned path.
pub fn plan_svg(
    scenario: &Scenario,
    tree: &PlanTree,
    path: Option<&[Waypoint]>,
    route: &[Point],
    title: &str,
) -> String {
    let region = &scenario.region;
    let (outer, _) = region_outline(region, 72);
    let mut extent: Vec<Point> = outer;
    extent.extend(route.iter().copied());
    extent.push(region.goal_point);
    extent.push(region.start);
    let frame = Frame::fit(extent);
    let mut out = String::new();
    open(&mut out, SIZE, SIZE);
    draw_region(&mut out, &frame, region);
    let mut edges = String::new();
    for n in tree.nodes() {
        if let Some(p) = n.parent {
            let q = tree.node(p).position;
            let _ = write!(
                edges,
                "M{:.1} {:.1}L{:.1} {:.1}",
                frame.x(q),
                frame.y(q),
                frame.x(n.position),
                frame.y(n.position)
            );
        }
    }
    let _ = writeln!(
        out,
        r##"<path d="{edges}" stroke="#9bb" stroke-width="0.5" fill="none"/>"##
    );
    if route.len() >= 2 {
        polyline(&mut out, &frame, route, "#555", 1.0, r#"stroke-dasharray="6 4""#);
    }
    if let Some(tv) = &scenario.target {
        let horizon = 2.0 * region.r_max / scenario.own_ship.speed;
        let track = [tv.position, tv.position_at(horizon)];
        polyline(&mut out, &frame, &track, "#b55", 1.0, r#"stroke-dasharray="2 3""#);
        dot(&mut out, &frame, tv.position, 5.0, "#b55");
    }
    if let Some(path) = path {
        let pts: Vec<Point> = path.iter().map(Waypoint::position).collect();
        polyline(&mut out, &frame, &pts, "#1f3fbf", 2.5, "");
        for p in &pts {
            dot(&mut out, &frame, *p, 3.0, "#1f3fbf");
        }
    }
    dot(&mut out, &frame, region.start, 5.0, "black");
    dot(&mut out, &frame, region.goal_point, 5.0, "#2a2");
    label(&mut out, PAD, 24.0, title);
    out.push_str("</svg>\n");
    out
}

/// Scatter of sampled points over an optional region outline.
pub fn scatter_svg(points: &[Point], region: Option<&CompliantRegion>, title: &str) -> String {
    let mut extent: Vec<Point> = points.to_vec();
    if let Some(r) = region {
        extent.extend(region_outline(r, 72).0);
        extent.push(r.center);
    }
    if extent.is_empty() {
        extent.push(Point::new(0.0, 0.0));
    }
    let frame = Frame::fit(extent);
    let mut out = String::new();
    open(&mut out, SIZE, SIZE);
    if let Some(r) = region {
        draw_region(&mut out, &frame, r);
    }
    for &p in points {
        dot(&mut out, &frame, p, 1.5, "#1f3fbf");
    }
    label(&mut out, PAD, 24.0, title);
    out.push_str("</svg>\n");
    out
}

/// Mean relative cost per iteration (left) and a histogram of
/// samples-to-first-solution (right), one color per strategy.
pub fn comparison_svg(campaign: &Campaign) -> String {
    let (w, h) = (1200.0, 520.0);
    let panel = |k: f64| (60.0 + k * 590.0, 60.0, 500.0, 380.0);
    let mut out = String::new();
    open(&mut out, w, h);
    let summaries = &campaign.summary.strategies;

    let (x0, y0, pw, ph) = panel(0.0);
    let budget = campaign.summary.budget.max(1) as f64;
    let costs: Vec<f64> = summaries
        .iter()
        .flat_map(|s| s.cost_curve.iter().filter_map(|c| c.mean_relative_cost))
        .collect();
    let hi = costs.iter().copied().fold(1.0f64, f64::max).max(1.001);
    axes(&mut out, x0, y0, pw, ph, "iteration", "mean c_best / c_min");
    let _ = writeln!(out, r#"<text x="{x0}" y="{:.1}">1.0</text>"#, y0 + ph + 14.0);
    let _ = writeln!(out, r#"<text x="{:.1}" y="{y0}">{hi:.3}</text>"#, x0 - 50.0);
    for s in summaries {
        let pts: Vec<String> = s
            .cost_curve
            .iter()
            .filter_map(|c| {
                c.mean_relative_cost.map(|v| {
                    let x = x0 + pw * c.iteration as f64 / budget;
                    let y = y0 + ph * (1.0 - (v - 1.0) / (hi - 1.0));
                    format!("{x:.1},{y:.1}")
                })
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="2"/>"#,
            pts.join(" "),
            color(s.strategy)
        );
    }
    legend(&mut out, x0 + pw - 190.0, y0 + 10.0, summaries);

    let (x0, y0, pw, ph) = panel(1.0);
    axes(&mut out, x0, y0, pw, ph, "samples to first solution", "trials");
    let firsts: Vec<(Strategy, f64)> = campaign
        .trials
        .iter()
        .filter_map(|t| t.samples_to_first_solution.map(|s| (t.strategy, s as f64)))
        .collect();
    let max = firsts.iter().map(|f| f.1).fold(1.0, f64::max);
    let bins = 30usize;
    let width = max / bins as f64;
    let mut counts = vec![vec![0usize; bins]; summaries.len()];
    for &(s, v) in &firsts {
        if let Some(k) = summaries.iter().position(|x| x.strategy == s) {
            counts[k][((v / width) as usize).min(bins - 1)] += 1;
        }
    }
    let top = counts.iter().flatten().copied().max().unwrap_or(1).max(1) as f64;
    let bar = pw / bins as f64 / summaries.len().max(1) as f64;
    for (k, s) in summaries.iter().enumerate() {
        for (b, &c) in counts[k].iter().enumerate() {
            if c == 0 {
                continue;
            }
            let bh = ph * c as f64 / top;
            let _ = writeln!(
                out,
                r#"<rect x="{:.1}" y="{:.1}" width="{bar:.2}" height="{bh:.1}" fill="{}" opacity="0.8"/>"#,
                x0 + (b * summaries.len() + k) as f64 * bar,
                y0 + ph - bh,
                color(s.strategy)
            );
        }
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}">{max:.0}</text>"#,
        x0 + pw - 20.0,
        y0 + ph + 14.0
    );
    out.push_str("</svg>\n");
    out
}

fn axes(out: &mut String, x0: f64, y0: f64, w: f64, h: f64, xlabel: &str, ylabel: &str) {
    let _ = writeln!(
        out,
        r#"<path d="M{x0} {y0}V{:.1}H{:.1}" stroke="black" fill="none"/>"#,
        y0 + h,
        x0 + w
    );
    label(out, x0 + 0.5 * w - 60.0, y0 + h + 34.0, xlabel);
    let _ = writeln!(
        out,
        r#"<text transform="translate({:.1} {:.1}) rotate(-90)">{ylabel}</text>"#,
        x0 - 14.0,
        y0 + 0.5 * h + 60.0
    );
}

fn legend(out: &mut String, x: f64, y: f64, summaries: &[StrategySummary]) {
    for (k, s) in summaries.iter().enumerate() {
        let yy = y + 18.0 * k as f64;
        let _ = writeln!(
            out,
            r#"<rect x="{x}" y="{yy}" width="12" height="12" fill="{}"/>"#,
            color(s.strategy)
        );
        label(out, x + 18.0, yy + 11.0, s.strategy.as_str());
    }
}

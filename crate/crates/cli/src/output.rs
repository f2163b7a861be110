//! CSV and SVG writers. CSV uses `.` decimals, a header row and
//! newline-terminated records; SVG plots one panel per road with the
//! numeric profile and, when available, the exact solution overlaid.

use std::fmt::Write as _;

use dropflow::exact::ExactNetworkSolution;
use dropflow::junction::Port;
use dropflow::network::{RoadNetwork, Trajectory};

pub fn trajectory_csv(net: &RoadNetwork, traj: &Trajectory) -> String {
    let mut out = String::from("time,road,x,density\n");
    for snap in &traj.snapshots {
        for (r, road) in net.roads.iter().enumerate() {
            for (&x, &u) in traj.grids[r].xs.iter().zip(&snap.roads[r]) {
                let _ = writeln!(out, "{},{},{},{}", snap.time, road.id, x, u);
            }
        }
    }
    out
}

pub fn junctions_csv(traj: &Trajectory) -> String {
    let mut out = String::from(
        "step,time,junction,f_in1,f_in2,f_out1,f_out2,f_adj_in1,f_adj_in2,\
         f_adj_out1,f_adj_out2,g_in1,g_in2,g_out1,g_out2\n",
    );
    let cell = |v: Option<&f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for step in &traj.traces {
        for (j, tr) in step.traces.iter().enumerate() {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                step.step,
                step.time,
                j,
                cell(tr.f_in.first()),
                cell(tr.f_in.get(1)),
                cell(tr.f_out.first()),
                cell(tr.f_out.get(1)),
                cell(tr.f_adj_in.first()),
                cell(tr.f_adj_in.get(1)),
                cell(tr.f_adj_out.first()),
                cell(tr.f_adj_out.get(1)),
                cell(tr.g_in.first()),
                cell(tr.g_in.get(1)),
                cell(tr.g_out.first()),
                cell(tr.g_out.get(1)),
            );
        }
    }
    out
}

const PANEL_W: f64 = 320.0;
const PANEL_H: f64 = 260.0;
const MARGIN: f64 = 42.0;

/// Density-versus-position profiles at one time, one panel per road.
pub fn profile_svg(
    net: &RoadNetwork,
    traj: &Trajectory,
    snapshot: usize,
    exact: Option<(&ExactNetworkSolution, &[(Port, f64)])>,
) -> String {
    let snap = &traj.snapshots[snapshot];
    let n = net.roads.len();
    let width = n as f64 * PANEL_W + MARGIN;
    let height = PANEL_H + 2.0 * MARGIN;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect width="{width}" height="{height}" fill="white"/>"#
    );

    for (r, road) in net.roads.iter().enumerate() {
        let x0 = MARGIN + r as f64 * PANEL_W;
        let y0 = MARGIN;
        let plot_w = PANEL_W - MARGIN;
        let plot_h = PANEL_H - MARGIN;
        let xs = &traj.grids[r].xs;
        let (xmin, xmax) = (road.origin, road.origin + road.length);
        let umax = net.flux.u_max();
        let sx = |x: f64| x0 + (x - xmin) / (xmax - xmin) * plot_w;
        let sy = |u: f64| y0 + (1.0 - u / umax) * plot_h;

        let _ = writeln!(
            svg,
            r#"<rect x="{x0}" y="{y0}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black" stroke-width="1"/>"#
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-size="13" text-anchor="middle">road {} at t={}</text>"#,
            x0 + plot_w / 2.0,
            y0 - 8.0,
            road.id,
            snap.time
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-size="11" text-anchor="middle">x</text>"#,
            x0 + plot_w / 2.0,
            y0 + plot_h + 26.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-size="11" text-anchor="middle" transform="rotate(-90 {} {})">density</text>"#,
            x0 - 26.0,
            y0 + plot_h / 2.0,
            x0 - 26.0,
            y0 + plot_h / 2.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{x0}" y="{}" font-size="10" text-anchor="middle">{xmin}</text>"#,
            y0 + plot_h + 13.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-size="10" text-anchor="middle">{xmax}</text>"#,
            x0 + plot_w,
            y0 + plot_h + 13.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-size="10" text-anchor="end">{umax}</text>"#,
            x0 - 4.0,
            y0 + 4.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-size="10" text-anchor="end">0</text>"#,
            x0 - 4.0,
            y0 + plot_h + 4.0
        );

        // Exact overlay first so the numeric curve draws on top.
        if let Some((sol, ports)) = exact {
            let (port, jx) = ports[r];
            let mut pts = String::new();
            let samples = 400;
            for k in 0..=samples {
                let x = xmin + (xmax - xmin) * k as f64 / samples as f64;
                let u = sol.evaluate(port, x - jx, snap.time);
                let _ = write!(pts, "{},{} ", sx(x), sy(u));
            }
            let _ = writeln!(
                svg,
                r##"<polyline points="{}" fill="none" stroke="#d62728" stroke-width="1.2" stroke-dasharray="5,3"/>"##,
                pts.trim_end()
            );
        }

        let mut pts = String::new();
        for (&x, &u) in xs.iter().zip(&snap.roads[r]) {
            let _ = write!(pts, "{},{} ", sx(x), sy(u));
        }
        let _ = writeln!(
            svg,
            r##"<polyline points="{}" fill="none" stroke="#1f77b4" stroke-width="1.5"/>"##,
            pts.trim_end()
        );
    }
    let _ = writeln!(svg, "</svg>");
    svg
}

/// Short decimal tag for file names: 1 -> "1", 0.5 -> "0.5".
pub fn time_tag(t: f64) -> String {
    let s = format!("{t}");
    s.replace('-', "m")
}

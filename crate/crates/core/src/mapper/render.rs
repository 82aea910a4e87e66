use std::fmt::Write as _;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Result, ScqError};

use super::scene::{Normalization, RenderScene, SceneMetadata};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Svg,
    Json,
    Csv,
}

impl FromStr for RenderFormat {
    type Err = ScqError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "svg" => Ok(RenderFormat::Svg),
            "json" => Ok(RenderFormat::Json),
            "csv" => Ok(RenderFormat::Csv),
            other => Err(ScqError::UnsupportedFormat(other.to_string())),
        }
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn check(scene: &RenderScene) -> Result<()> {
    if scene.boundary.len() != 4 || scene.vertices.len() != 4 || scene.is_empty() {
        return Err(ScqError::Degenerate("scene has no boundary".into()));
    }
    let finite = |w: &Complex64| w.re.is_finite() && w.im.is_finite();
    if !scene
        .boundary
        .iter()
        .flatten()
        .chain(&scene.vertices)
        .all(finite)
    {
        return Err(ScqError::Degenerate("scene has non-finite points".into()));
    }
    Ok(())
}

pub fn render(scene: &RenderScene, format: RenderFormat) -> Result<Vec<u8>> {
    check(scene)?;
    let text = match format {
        RenderFormat::Svg => svg(scene),
        RenderFormat::Json => json(scene),
        RenderFormat::Csv => csv(scene),
    };
    Ok(text.into_bytes())
}

fn svg(scene: &RenderScene) -> String {
    let pts: Vec<Complex64> = scene.outline();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in &pts {
        x0 = x0.min(p.re);
        x1 = x1.max(p.re);
        y0 = y0.min(-p.im);
        y1 = y1.max(-p.im);
    }
    let (w, h) = ((x1 - x0).max(1e-12), (y1 - y0).max(1e-12));
    let margin = 0.05 * w.max(h);
    let stroke = 0.004 * w.max(h);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">",
        num(x0 - margin),
        num(y0 - margin),
        num(w + 2.0 * margin),
        num(h + 2.0 * margin)
    );
    for k in 0..4 {
        let mut d = String::new();
        for (i, p) in scene.closed_edge(k).iter().enumerate() {
            let _ = write!(
                d,
                "{}{} {} ",
                if i == 0 { "M" } else { "L" },
                num(p.re),
                num(-p.im)
            );
        }
        let _ = writeln!(
            out,
            "  <path d=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"{}\"/>",
            d.trim_end(),
            num(stroke)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn point_list(points: &[Complex64]) -> String {
    let items: Vec<String> = points
        .iter()
        .map(|p| format!("[{},{}]", num(p.re), num(p.im)))
        .collect();
    format!("[{}]", items.join(","))
}

fn json(scene: &RenderScene) -> String {
    let m = &scene.metadata;
    let edges: Vec<String> = scene.boundary.iter().map(|e| point_list(e)).collect();
    format!(
        "{{\"t\":{},\"lambda\":{},\"normalized\":{},\"edges\":[{}],\"vertices\":{}}}\n",
        num(m.t),
        num(m.lambda),
        m.normalization == Normalization::G,
        edges.join(","),
        point_list(&scene.vertices)
    )
}

fn csv(scene: &RenderScene) -> String {
    let mut out = String::from("edge_index,point_index,x,y\n");
    for (e, edge) in scene.boundary.iter().enumerate() {
        for (i, p) in edge.iter().enumerate() {
            let _ = writeln!(out, "{e},{i},{},{}", num(p.re), num(p.im));
        }
    }
    out
}

fn parse_points(v: &serde_json::Value) -> Result<Vec<Complex64>> {
    let bad = || ScqError::Degenerate("malformed point list".into());
    v.as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|p| {
            let xy = p.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
            Ok(Complex64::new(
                xy[0].as_f64().ok_or_else(bad)?,
                xy[1].as_f64().ok_or_else(bad)?,
            ))
        })
        .collect()
}

impl RenderScene {
    /// Reads back the JSON form; `steps` is not part of the format and is
    /// set to 0.
    pub fn from_json(text: &str) -> Result<RenderScene> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| ScqError::Degenerate(e.to_string()))?;
        let field = |k: &str| {
            v.get(k)
                .ok_or_else(|| ScqError::Degenerate(format!("missing {k}")))
        };
        let boundary = field("edges")?
            .as_array()
            .ok_or_else(|| ScqError::Degenerate("edges".into()))?
            .iter()
            .map(parse_points)
            .collect::<Result<Vec<_>>>()?;
        let number = |k: &str| -> Result<f64> {
            field(k)?
                .as_f64()
                .ok_or_else(|| ScqError::Degenerate(format!("{k} is not a number")))
        };
        Ok(RenderScene {
            boundary,
            vertices: parse_points(field("vertices")?)?,
            metadata: SceneMetadata {
                t: number("t")?,
                lambda: number("lambda")?,
                steps: 0,
                normalization: if field("normalized")?.as_bool() == Some(true) {
                    Normalization::G
                } else {
                    Normalization::F
                },
            },
        })
    }
}

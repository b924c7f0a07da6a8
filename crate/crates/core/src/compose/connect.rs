use super::ComposeError;
use crate::assets::ConnectionStyle;
use crate::content::{Issue, Severity};
use crate::geometry::{Canvas, Point};
use crate::layout::{pivot_center, PivotPlacement};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConnectionParams {
    /// Connector length relative to the flow line (or pivot ray) it sits on.
    pub length_factor: f64,
    /// FlowShape placement along a segment, from the end nearer the center.
    pub flow_offset: f64,
    pub flow_length_factor: f64,
    /// Connector thickness at VG scale 1, relative to the shorter canvas side.
    pub thickness_fraction: f64,
}

impl Default for ConnectionParams {
    fn default() -> Self {
        ConnectionParams {
            length_factor: 0.8,
            flow_offset: 0.35,
            flow_length_factor: 0.5,
            thickness_fraction: 0.03,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConnectionInstance {
    pub design_id: String,
    pub style: ConnectionStyle,
    /// Center of the connector, in canvas fractions.
    pub placement: Point,
    /// Direction of the connector's length axis, clockwise from +x.
    pub angle_deg: f64,
    /// Length as a fraction of the shorter canvas side.
    pub length: f64,
}

fn segment_warning(i: usize) -> Issue {
    Issue {
        severity: Severity::Warning,
        item_index: Some(i),
        code: "ZERO_LENGTH_SEGMENT".into(),
        message: format!("points {i} and {} coincide; connector skipped", i + 1),
    }
}

/// Connector geometry for `style` along the layout. Coincident endpoints
/// skip their connector with a warning instead of failing the render.
pub fn generate_connections(
    style: ConnectionStyle,
    design_id: &str,
    points: &[Point],
    pivot: Option<&PivotPlacement>,
    canvas: &Canvas,
    params: &ConnectionParams,
) -> Result<(Vec<ConnectionInstance>, Vec<Issue>), ComposeError> {
    let px: Vec<Point> = points.iter().map(|&p| canvas.to_px(p)).collect();
    let min_side = canvas.min_side();
    let mut out = Vec::new();
    let mut warnings = Vec::new();
    let mut push = |from: Point, to: Point, at: Point, factor: f64| {
        let (dx, dy) = (to.x - from.x, to.y - from.y);
        let len = dx.hypot(dy);
        out.push(ConnectionInstance {
            design_id: design_id.to_string(),
            style,
            placement: canvas.to_fraction(at),
            angle_deg: dy.atan2(dx).to_degrees(),
            length: len * factor / min_side,
        });
    };

    match style {
        ConnectionStyle::None => {}
        ConnectionStyle::Regular | ConnectionStyle::Alternate => {
            let step = if style == ConnectionStyle::Regular { 1 } else { 2 };
            for i in (0..px.len().saturating_sub(1)).step_by(step) {
                let (a, b) = (px[i], px[i + 1]);
                if a == b {
                    warnings.push(segment_warning(i));
                    continue;
                }
                push(a, b, a.midpoint(b), params.length_factor);
            }
        }
        ConnectionStyle::Pivot => {
            let pv = pivot.ok_or(ComposeError::PivotRequired)?;
            let c = canvas.to_px(pivot_center(&pv.bbox));
            for (i, &p) in px.iter().enumerate() {
                if p == c {
                    warnings.push(Issue {
                        severity: Severity::Warning,
                        item_index: Some(i),
                        code: "ZERO_LENGTH_SEGMENT".into(),
                        message: format!("point {i} sits on the pivot center; connector skipped"),
                    });
                    continue;
                }
                push(c, p, c.midpoint(p), params.length_factor);
            }
        }
        ConnectionStyle::FlowShape => {
            let center = canvas.to_px(pivot.map_or(Point::new(0.5, 0.5), |pv| pivot_center(&pv.bbox)));
            for i in 0..px.len().saturating_sub(1) {
                let (a, b) = (px[i], px[i + 1]);
                if a == b {
                    warnings.push(segment_warning(i));
                    continue;
                }
                let (near, far) = if a.distance(center) <= b.distance(center) {
                    (a, b)
                } else {
                    (b, a)
                };
                push(a, b, near.lerp(far, params.flow_offset), params.flow_length_factor);
            }
        }
    }
    Ok((out, warnings))
}

//! Text and JSON renderings. Matrices are shown in the column convention
//! (`dim target × dim source`); JSON scalars are `"p/q"` strings over Q and integers
//! over GF(p).

use std::fmt::Write;

use gbpa::{arrow_display, ArrowDisplay, Field, GbpAlgebra, Matrix, Path, Representation, Scalar, VertexModule};
use serde_json::{json, Value};

use crate::spec::{AlgebraDef, SpecDocument};

pub fn scalar_json(field: Field, s: &Scalar) -> Value {
    match field {
        Field::Rationals => Value::String(s.to_string()),
        Field::Prime(_) => json!(s.to_i64().expect("GF(p) elements are small integers")),
    }
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array(m.row(r).iter().map(|s| scalar_json(m.field(), s)).collect()))
            .collect(),
    )
}

/// Right-aligned rows, one per line, each prefixed by `indent`.
pub fn matrix_text(m: &Matrix, indent: &str) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows()).map(|r| m.row(r).iter().map(|s| s.to_string()).collect()).collect();
    let width = cells.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(1);
    let mut out = String::new();
    for row in cells {
        out.push_str(indent);
        let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(&padded.join(" "));
        out.push('\n');
    }
    out
}

/// Name of the opposite of a declared algebra, as written in the opposite spec.
pub fn opposite_name(def: &AlgebraDef) -> String {
    if def.shorthand {
        def.name.clone()
    } else {
        format!("{}_op", def.name)
    }
}

/// Column-convention matrices of the Σ-arrows acting on `m`, and the dimension of each
/// `M·e_v`.
fn vertex_module_parts(m: &VertexModule) -> (Vec<(String, Matrix)>, Vec<(String, usize)>) {
    let a = m.algebra();
    let sigma = a.sigma();
    let arrows = (0..sigma.arrow_count())
        .map(|k| {
            let path = Path::from_arrows(sigma, vec![k]).expect("an arrow is a path");
            let x = m.action_of(&a.reduce_path(&path));
            (sigma.arrow(k).name.clone(), x.transpose())
        })
        .collect();
    let comps = (0..sigma.vertex_count())
        .map(|v| (sigma.vertex_name(v).to_string(), m.action(a.idempotent(v)).rank()))
        .collect();
    (arrows, comps)
}

fn display_cells(d: &ArrowDisplay) -> Option<(&'static str, Vec<Vec<&'static str>>)> {
    let (kind, cells, mark) = match d {
        ArrowDisplay::Mu(c) => ("mu", c, "μ"),
        ArrowDisplay::DualMu(c) => ("dual_mu", c, "D(μ)"),
        ArrowDisplay::Raw(_) => return None,
    };
    let rows = cells
        .iter()
        .map(|r| r.iter().map(|&b| if b { mark } else { "0" }).collect())
        .collect();
    Some((kind, rows))
}

/// A representation together with how to name things on its side of the opposite.
pub struct RepView<'a> {
    pub command: &'a str,
    pub label: String,
    pub rep: &'a Representation,
    /// algebra name per vertex of Γ (or Γ^op)
    pub algebra_names: Vec<String>,
    pub opposite: bool,
}

impl RepView<'_> {
    pub fn text(&self) -> String {
        let r = self.rep;
        let g = r.lambda().gamma();
        let dims: Vec<String> = r.dimension_vector().iter().map(|d| d.to_string()).collect();
        let mut out = format!("{}: dimension vector ({})", self.label, dims.join(", "));
        if self.opposite {
            out.push_str(", over the opposite algebra");
        }
        out.push('\n');
        for i in 0..g.vertex_count() {
            let m = r.module(i);
            let (arrows, comps) = vertex_module_parts(m);
            let comps: Vec<String> = comps.iter().map(|(v, d)| format!("{v}:{d}")).collect();
            let _ = writeln!(
                out,
                "vertex {} [{}]: dim {} ({})",
                g.vertex_name(i),
                self.algebra_names[i],
                m.dim(),
                comps.join(" ")
            );
            if m.dim() == 0 {
                continue;
            }
            for (name, x) in arrows {
                let _ = writeln!(out, "  {name}:");
                out.push_str(&matrix_text(&x, "    "));
            }
        }
        for (k, a) in g.arrows().iter().enumerate() {
            let col = r.map(k).transpose();
            let _ = write!(
                out,
                "arrow {}: {} -> {} ({}x{})",
                a.name,
                g.vertex_name(a.source),
                g.vertex_name(a.target),
                col.rows(),
                col.cols()
            );
            if let Some((_, cells)) = display_cells(&arrow_display(r, k)) {
                let rows: Vec<String> = cells.iter().map(|row| format!("[{}]", row.join(", "))).collect();
                let _ = write!(out, " = [{}]", rows.join(", "));
            }
            out.push('\n');
            out.push_str(&matrix_text(&col, "    "));
        }
        out
    }

    pub fn json(&self) -> Value {
        let r = self.rep;
        let g = r.lambda().gamma();
        let f = r.field();
        let vertices: Vec<Value> = (0..g.vertex_count())
            .map(|i| {
                let m = r.module(i);
                let (arrows, comps) = vertex_module_parts(m);
                json!({
                    "name": g.vertex_name(i),
                    "algebra": self.algebra_names[i],
                    "dim": m.dim(),
                    "components": comps.iter().map(|(v, d)| json!({"vertex": v, "dim": d})).collect::<Vec<_>>(),
                    "actions": arrows.iter().map(|(a, x)| json!({"arrow": a, "matrix": matrix_json(x)})).collect::<Vec<_>>(),
                })
            })
            .collect();
        let arrows: Vec<Value> = g
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let col = r.map(k).transpose();
                let display = match display_cells(&arrow_display(r, k)) {
                    Some((kind, cells)) => json!({"kind": kind, "cells": cells}),
                    None => json!({"kind": "raw"}),
                };
                json!({
                    "name": a.name,
                    "source": g.vertex_name(a.source),
                    "target": g.vertex_name(a.target),
                    "rows": col.rows(),
                    "cols": col.cols(),
                    "matrix": matrix_json(&col),
                    "display": display,
                })
            })
            .collect();
        json!({
            "command": self.command,
            "label": self.label,
            "over": if self.opposite { "opposite" } else { "original" },
            "field": f.name(),
            "dimension_vector": r.dimension_vector(),
            "vertices": vertices,
            "arrows": arrows,
        })
    }
}

pub fn check_text(doc: &SpecDocument) -> String {
    let l = &doc.lambda;
    let g = l.gamma();
    let mut out = format!("field {}\n", doc.field.name());
    let _ = writeln!(out, "dim Λ = {} (free {}, ideal {})", l.dim(), l.free_dim(), l.ideal_dim());
    for a in &doc.algebras {
        let sigma = a.algebra.sigma();
        let _ = writeln!(
            out,
            "algebra {}: dim {}, {} vertices, {} arrows",
            a.name,
            a.algebra.dim(),
            sigma.vertex_count(),
            sigma.arrow_count()
        );
    }
    for i in 0..g.vertex_count() {
        let _ = writeln!(
            out,
            "vertex {} [{}]",
            g.vertex_name(i),
            doc.vertex_algebras[i]
        );
    }
    for a in g.arrows() {
        let _ = writeln!(out, "arrow {}: {} -> {}", a.name, g.vertex_name(a.source), g.vertex_name(a.target));
    }
    for r in l.relations() {
        let _ = writeln!(out, "rel {}", r.render(g));
    }
    if l.has_multi_term_relations() {
        out.push_str("note: multi-term relations; each term is intercalated with vertex-algebra elements independently\n");
    }
    for m in &doc.modules {
        let _ = writeln!(out, "module {} over {}: dim {}", m.name, m.algebra, m.module.dim());
    }
    out
}

pub fn check_json(doc: &SpecDocument) -> Value {
    let l = &doc.lambda;
    let g = l.gamma();
    json!({
        "command": "check",
        "field": doc.field.name(),
        "dim": l.dim(),
        "free_dim": l.free_dim(),
        "ideal_dim": l.ideal_dim(),
        "multi_term_relations": l.has_multi_term_relations(),
        "algebras": doc.algebras.iter().map(|a| json!({
            "name": a.name,
            "dim": a.algebra.dim(),
            "vertices": a.algebra.sigma().vertices(),
            "arrows": a.algebra.sigma().arrows().iter().map(|x| x.name.clone()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "vertices": (0..g.vertex_count()).map(|i| json!({
            "name": g.vertex_name(i),
            "algebra": doc.vertex_algebras[i],
        })).collect::<Vec<_>>(),
        "arrows": g.arrows().iter().map(|a| json!({
            "name": a.name,
            "source": g.vertex_name(a.source),
            "target": g.vertex_name(a.target),
        })).collect::<Vec<_>>(),
        "relations": l.relations().iter().map(|r| r.render(g)).collect::<Vec<_>>(),
        "modules": doc.modules.iter().map(|m| json!({
            "name": m.name,
            "algebra": m.algebra,
            "dim": m.module.dim(),
        })).collect::<Vec<_>>(),
    })
}

pub fn basis_text(l: &GbpAlgebra) -> String {
    let width = l.dim().saturating_sub(1).to_string().len();
    let mut out = String::new();
    for b in 0..l.dim() {
        let _ = writeln!(out, "{b:>width$}  {}", l.basis_name(b));
    }
    out
}

pub fn basis_json(l: &GbpAlgebra) -> Value {
    let g = l.gamma();
    json!({
        "command": "basis",
        "dim": l.dim(),
        "basis": l.basis().iter().enumerate().map(|(b, m)| json!({
            "index": b,
            "name": l.basis_name(b),
            "start": g.vertex_name(m.start()),
            "end": g.vertex_name(m.end()),
            "length": m.len(),
        })).collect::<Vec<_>>(),
    })
}

fn combo_text(f: Field, terms: &[(usize, Scalar)]) -> String {
    let mut out = String::new();
    for (k, (b, c)) in terms.iter().enumerate() {
        let neg = f == Field::Rationals && *c < Scalar::zero();
        let mag = if neg { -c } else { c.clone() };
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if !mag.is_one() {
            let _ = write!(out, "{mag} ");
        }
        let _ = write!(out, "b{b}");
    }
    out
}

/// Nonzero products of basis elements, with basis elements named `b<index>`.
pub fn table_text(l: &GbpAlgebra) -> String {
    let mut out = basis_text(l);
    out.push('\n');
    for x in 0..l.dim() {
        for y in 0..l.dim() {
            let p = l.mult(x, y);
            if !p.is_empty() {
                let _ = writeln!(out, "b{x} * b{y} = {}", combo_text(l.field(), p));
            }
        }
    }
    out
}

pub fn table_json(l: &GbpAlgebra) -> Value {
    let f = l.field();
    let mut products = Vec::new();
    for x in 0..l.dim() {
        for y in 0..l.dim() {
            let p = l.mult(x, y);
            if !p.is_empty() {
                products.push(json!({
                    "left": x,
                    "right": y,
                    "terms": p.iter().map(|(b, c)| json!({"index": b, "coeff": scalar_json(f, c)})).collect::<Vec<_>>(),
                }));
            }
        }
    }
    json!({
        "command": "table",
        "dim": l.dim(),
        "basis": (0..l.dim()).map(|b| l.basis_name(b)).collect::<Vec<_>>(),
        "products": products,
    })
}

fn quiver_lines(out: &mut String, indent: &str, q: &gbpa::Quiver, reversed: bool) {
    for a in q.arrows() {
        let (s, t) = if reversed { (a.target, a.source) } else { (a.source, a.target) };
        let _ = writeln!(out, "{indent}arrow {} {} {}", a.name, q.vertex_name(s), q.vertex_name(t));
    }
}

/// The specification of `Λ^{op}`: every quiver reversed, relations read backwards,
/// algebras renamed `<name>_op` (the `k` shorthand is its own opposite) and each
/// module `M` replaced by its dual `M_dual` with transposed maps.
pub fn opposite_spec(doc: &SpecDocument) -> String {
    let l = &doc.lambda;
    let g = l.gamma();
    let mut out = match doc.field {
        Field::Rationals => "field Q\n".to_string(),
        Field::Prime(p) => format!("field GF {p}\n"),
    };
    for a in &doc.algebras {
        if a.shorthand {
            let _ = writeln!(out, "algebra {} k", a.name);
            continue;
        }
        let sigma = a.algebra.sigma();
        let _ = writeln!(out, "algebra {} {{", opposite_name(a));
        let _ = writeln!(out, "  vertices {}", sigma.vertices().join(" "));
        quiver_lines(&mut out, "  ", sigma, true);
        let sigma_op = sigma.opposite();
        for r in a.algebra.omega() {
            let _ = writeln!(out, "  rel {}", r.reversed().render(&sigma_op));
        }
        out.push_str("}\n");
    }
    out.push_str("gamma {\n");
    for i in 0..g.vertex_count() {
        let def = doc.algebra_def(&doc.vertex_algebras[i]).expect("resolved at parse time");
        let _ = writeln!(out, "  vertex {} {}", g.vertex_name(i), opposite_name(def));
    }
    quiver_lines(&mut out, "  ", g, true);
    out.push_str("}\n");
    if !l.relations().is_empty() {
        let g_op = g.opposite();
        out.push_str("relations {\n");
        for r in l.relations() {
            let _ = writeln!(out, "  rel {}", r.reversed().render(&g_op));
        }
        out.push_str("}\n");
    }
    for m in &doc.modules {
        let def = doc.algebra_def(&m.algebra).expect("resolved at parse time");
        let sigma = def.algebra.sigma();
        let _ = writeln!(out, "module {}_dual over {} {{", m.name, opposite_name(def));
        for (v, d) in m.dims.iter().enumerate() {
            let _ = writeln!(out, "  vertex {} dim {d}", sigma.vertex_name(v));
        }
        for (k, x) in m.maps.iter().enumerate() {
            let _ = writeln!(out, "  arrow {} {}", sigma.arrow(k).name, matrix_literal(&x.transpose()));
        }
        out.push_str("}\n");
    }
    out
}

pub fn matrix_literal(m: &Matrix) -> String {
    if m.rows() == 0 || m.cols() == 0 {
        return "[]".to_string();
    }
    let rows: Vec<String> = (0..m.rows())
        .map(|r| {
            let cells: Vec<String> = m.row(r).iter().map(|s| s.to_string()).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

//! JSON configuration for orders.
//!
//! Every order is a single-key JSON object naming the node, e.g.
//! `{"dehornoy": 3}` or `{"refine": {"outer": ..., "convex": "cyclic:x1",
//! "inner": ...}}`. Parsing binds the tree against a concrete group context
//! and validates compatibility; [`spec_to_json`] re-emits the canonical form.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::groups::GroupCtx;
use crate::orders::{
    identity_precedence, pgt_build, ConvexPredicate, OrderSpec, SignAssignment,
};

/// Parses a JSON order description and binds it to `ctx`.
pub fn parse_order_spec(value: &Value, ctx: &GroupCtx) -> Result<OrderSpec> {
    let spec = parse_node(value, ctx)?;
    spec.validate(ctx)?;
    Ok(spec)
}

/// Canonical JSON form of a spec (optional fields written out explicitly).
pub fn spec_to_json(spec: &OrderSpec) -> Value {
    match spec {
        OrderSpec::Klein { eps_a, eps_b } => json!({"klein": {"eps_a": eps_a, "eps_b": eps_b}}),
        OrderSpec::Eg { assignment } => match assignment {
            SignAssignment::ConstantPlus => json!({"eg": "plus"}),
            SignAssignment::ConstantMinus => json!({"eg": "minus"}),
            SignAssignment::Derived(_) => json!({"eg": "pgt"}),
            SignAssignment::Explicit(map) => {
                let table: Map<String, Value> = map
                    .iter()
                    .map(|(i, s)| (i.to_string(), json!(s)))
                    .collect();
                json!({"eg": {"explicit": table}})
            }
        },
        OrderSpec::Magnus { rank, precedence } => {
            json!({"magnus": {"rank": rank, "precedence": precedence}})
        }
        OrderSpec::FreeDiscrete { rank, distinguished, inner } => json!({
            "freediscrete": {
                "rank": rank,
                "distinguished": distinguished,
                "inner": spec_to_json(inner),
            }
        }),
        OrderSpec::KernelFirst { inner } => json!({"lemma34": {"inner": spec_to_json(inner)}}),
        OrderSpec::CentralExt { z_order, center_quotient, central_quotient } => json!({
            "centralext": {
                "z_order": z_order,
                "quotient": spec_to_json(central_quotient),
                "center_quotient": spec_to_json(center_quotient),
            }
        }),
        OrderSpec::Dehornoy { strands } => json!({"dehornoy": strands}),
        OrderSpec::CrispParis => json!({"crispparis": {}}),
        OrderSpec::QuotientFirst { kernel } => {
            json!({"quotientfirst": {"kernel": spec_to_json(kernel)}})
        }
        OrderSpec::Refine { outer, convex, inner } => json!({
            "refine": {
                "outer": spec_to_json(outer),
                "convex": convex.id(),
                "inner": spec_to_json(inner),
            }
        }),
        OrderSpec::Reverse { inner } => json!({"reverse": spec_to_json(inner)}),
    }
}

fn parse_node(value: &Value, ctx: &GroupCtx) -> Result<OrderSpec> {
    let obj = value
        .as_object()
        .ok_or_else(|| config_err("order spec must be a single-key JSON object"))?;
    if obj.len() != 1 {
        return Err(config_err(&format!(
            "order spec must have exactly one key, got {}",
            obj.len()
        )));
    }
    let (key, body) = obj.iter().next().expect("len checked");
    match key.as_str() {
        "klein" => parse_klein(body),
        "eg" => parse_eg(body, ctx),
        "magnus" => parse_magnus(body),
        "freediscrete" => parse_freediscrete(body, ctx),
        "lemma34" => parse_lemma34(body, ctx),
        "centralext" => parse_centralext(body, ctx),
        "dehornoy" => {
            let strands = body
                .as_u64()
                .and_then(|v| u32::try_from(v).ok())
                .ok_or_else(|| config_err("`dehornoy` takes the strand count as a number"))?;
            Ok(OrderSpec::Dehornoy { strands })
        }
        "crispparis" => {
            let inner = body
                .as_object()
                .ok_or_else(|| config_err("`crispparis` takes an empty object"))?;
            if !inner.is_empty() {
                return Err(config_err("`crispparis` takes no parameters"));
            }
            Ok(OrderSpec::CrispParis)
        }
        "quotientfirst" => parse_quotientfirst(body, ctx),
        "refine" => parse_refine(body, ctx),
        "reverse" => Ok(OrderSpec::Reverse { inner: Box::new(parse_node(body, ctx)?) }),
        other => Err(config_err(&format!("unknown order node `{other}`"))),
    }
}

fn config_err(msg: &str) -> Error {
    Error::Config(msg.to_string())
}

fn expect_keys(obj: &Map<String, Value>, node: &str, allowed: &[&str]) -> Result<()> {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(config_err(&format!(
                "unknown field `{key}` in `{node}` (allowed: {})",
                allowed.join(", ")
            )));
        }
    }
    Ok(())
}

fn body_object<'v>(body: &'v Value, node: &str) -> Result<&'v Map<String, Value>> {
    body.as_object()
        .ok_or_else(|| config_err(&format!("`{node}` takes a JSON object")))
}

fn get_i8(obj: &Map<String, Value>, node: &str, field: &str) -> Result<i8> {
    let v = obj
        .get(field)
        .ok_or_else(|| config_err(&format!("`{node}` is missing `{field}`")))?;
    v.as_i64()
        .and_then(|v| i8::try_from(v).ok())
        .ok_or_else(|| config_err(&format!("`{node}.{field}` must be 1 or -1")))
}

fn get_u32(obj: &Map<String, Value>, node: &str, field: &str) -> Result<u32> {
    let v = obj
        .get(field)
        .ok_or_else(|| config_err(&format!("`{node}` is missing `{field}`")))?;
    v.as_u64()
        .and_then(|v| u32::try_from(v).ok())
        .ok_or_else(|| config_err(&format!("`{node}.{field}` must be a small non-negative number")))
}

/// If the node carries a `"group"` field, it must name the bound context.
fn check_group_field(obj: &Map<String, Value>, node: &str, ctx: &GroupCtx) -> Result<()> {
    if let Some(v) = obj.get("group") {
        let named = v
            .as_str()
            .ok_or_else(|| config_err(&format!("`{node}.group` must be a descriptor string")))?;
        if named != ctx.descriptor() {
            return Err(Error::IncompatibleSpec(format!(
                "`{node}` names group `{named}` but is bound to `{}`",
                ctx.descriptor()
            )));
        }
    }
    Ok(())
}

fn parse_klein(body: &Value) -> Result<OrderSpec> {
    let obj = body_object(body, "klein")?;
    expect_keys(obj, "klein", &["eps_a", "eps_b"])?;
    Ok(OrderSpec::Klein {
        eps_a: get_i8(obj, "klein", "eps_a")?,
        eps_b: get_i8(obj, "klein", "eps_b")?,
    })
}

fn parse_eg(body: &Value, ctx: &GroupCtx) -> Result<OrderSpec> {
    let assignment = match body {
        Value::String(token) => match token.as_str() {
            "plus" => SignAssignment::ConstantPlus,
            "minus" => SignAssignment::ConstantMinus,
            "pgt" => match ctx {
                GroupCtx::SemidirectByT { window, action } => {
                    SignAssignment::Derived(Arc::new(pgt_build(action, *window)?))
                }
                _ => {
                    return Err(Error::IncompatibleSpec(format!(
                        "`eg: pgt` derives its signs from a t-action and needs an \
                         extension by t, got group `{}`",
                        ctx.descriptor()
                    )))
                }
            },
            other => {
                return Err(config_err(&format!(
                    "unknown `eg` token `{other}` (expected plus, minus, pgt, or explicit)"
                )))
            }
        },
        Value::Object(obj) => {
            expect_keys(obj, "eg", &["explicit"])?;
            let table = obj
                .get("explicit")
                .and_then(Value::as_object)
                .ok_or_else(|| config_err("`eg.explicit` takes an index-to-sign object"))?;
            let mut map = BTreeMap::new();
            for (k, v) in table {
                let idx: i64 = k
                    .parse()
                    .map_err(|_| config_err(&format!("`eg.explicit` key `{k}` is not an index")))?;
                let sign = v
                    .as_i64()
                    .and_then(|v| i8::try_from(v).ok())
                    .filter(|s| *s == 1 || *s == -1)
                    .ok_or_else(|| config_err(&format!("`eg.explicit[{k}]` must be 1 or -1")))?;
                map.insert(idx, sign);
            }
            SignAssignment::Explicit(map)
        }
        _ => return Err(config_err("`eg` takes a token or an explicit table")),
    };
    Ok(OrderSpec::Eg { assignment })
}

fn parse_magnus(body: &Value) -> Result<OrderSpec> {
    let obj = body_object(body, "magnus")?;
    expect_keys(obj, "magnus", &["rank", "precedence"])?;
    let rank = get_u32(obj, "magnus", "rank")?;
    let precedence = match obj.get("precedence") {
        None => identity_precedence(rank),
        Some(v) => {
            let list = v
                .as_array()
                .ok_or_else(|| config_err("`magnus.precedence` must be an array"))?;
            list.iter()
                .map(|e| {
                    e.as_u64()
                        .and_then(|v| u32::try_from(v).ok())
                        .ok_or_else(|| config_err("`magnus.precedence` entries must be generator numbers"))
                })
                .collect::<Result<Vec<u32>>>()?
        }
    };
    Ok(OrderSpec::Magnus { rank, precedence })
}

fn parse_freediscrete(body: &Value, ctx: &GroupCtx) -> Result<OrderSpec> {
    let obj = body_object(body, "freediscrete")?;
    expect_keys(obj, "freediscrete", &["rank", "distinguished", "inner"])?;
    let rank = get_u32(obj, "freediscrete", "rank")?;
    let distinguished = get_u32(obj, "freediscrete", "distinguished")?;
    let inner = match obj.get("inner") {
        None => OrderSpec::Magnus { rank, precedence: identity_precedence(rank) },
        Some(v) => parse_node(v, ctx)?,
    };
    Ok(OrderSpec::FreeDiscrete { rank, distinguished, inner: Box::new(inner) })
}

fn parse_lemma34(body: &Value, ctx: &GroupCtx) -> Result<OrderSpec> {
    let obj = body_object(body, "lemma34")?;
    expect_keys(obj, "lemma34", &["group", "inner"])?;
    check_group_field(obj, "lemma34", ctx)?;
    let inner = obj
        .get("inner")
        .ok_or_else(|| config_err("`lemma34` is missing `inner`"))?;
    Ok(OrderSpec::KernelFirst { inner: Box::new(parse_node(inner, ctx)?) })
}

fn parse_centralext(body: &Value, ctx: &GroupCtx) -> Result<OrderSpec> {
    let obj = body_object(body, "centralext")?;
    expect_keys(obj, "centralext", &["group", "z_order", "quotient", "center_quotient"])?;
    check_group_field(obj, "centralext", ctx)?;
    let base_ctx = match ctx {
        GroupCtx::DirectWithZ { base } => base.as_ref().clone(),
        _ => {
            return Err(Error::IncompatibleSpec(format!(
                "`centralext` needs a direct product with z, got group `{}`",
                ctx.descriptor()
            )))
        }
    };
    let z_order = match obj.get("z_order") {
        None => 1,
        Some(_) => get_i8(obj, "centralext", "z_order")?,
    };
    let quotient = obj
        .get("quotient")
        .ok_or_else(|| config_err("`centralext` is missing `quotient`"))?;
    let central_quotient = parse_node(quotient, &base_ctx)?;
    let center_quotient = match obj.get("center_quotient") {
        None => central_quotient.clone(),
        Some(v) => parse_node(v, &base_ctx)?,
    };
    Ok(OrderSpec::CentralExt {
        z_order,
        center_quotient: Box::new(center_quotient),
        central_quotient: Box::new(central_quotient),
    })
}

fn parse_quotientfirst(body: &Value, ctx: &GroupCtx) -> Result<OrderSpec> {
    let obj = body_object(body, "quotientfirst")?;
    expect_keys(obj, "quotientfirst", &["group", "kernel"])?;
    check_group_field(obj, "quotientfirst", ctx)?;
    let base_ctx = ctx.base_view().ok_or_else(|| {
        Error::IncompatibleSpec(format!(
            "`quotientfirst` needs an extension group, got `{}`",
            ctx.descriptor()
        ))
    })?;
    let kernel = obj
        .get("kernel")
        .ok_or_else(|| config_err("`quotientfirst` is missing `kernel`"))?;
    Ok(OrderSpec::QuotientFirst { kernel: Box::new(parse_node(kernel, &base_ctx)?) })
}

fn parse_refine(body: &Value, ctx: &GroupCtx) -> Result<OrderSpec> {
    let obj = body_object(body, "refine")?;
    expect_keys(obj, "refine", &["outer", "convex", "inner"])?;
    let outer = obj
        .get("outer")
        .ok_or_else(|| config_err("`refine` is missing `outer`"))?;
    let inner = obj
        .get("inner")
        .ok_or_else(|| config_err("`refine` is missing `inner`"))?;
    let convex = obj
        .get("convex")
        .and_then(Value::as_str)
        .ok_or_else(|| config_err("`refine.convex` must be a predicate id string"))?;
    Ok(OrderSpec::Refine {
        outer: Box::new(parse_node(outer, ctx)?),
        convex: ConvexPredicate::parse(convex)?,
        inner: Box::new(parse_node(inner, ctx)?),
    })
}

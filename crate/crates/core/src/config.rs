use std::sync::OnceLock;

/// Default cap on group orders accepted by table construction and
/// lattice enumeration.
pub const DEFAULT_ORDER_BOUND: usize = 512;

static ORDER_BOUND: OnceLock<usize> = OnceLock::new();

/// The configured order bound.
///
/// Read once from `ZJKIT_ORDER_BOUND`, falling back to
/// [`DEFAULT_ORDER_BOUND`]. Element indices are 16-bit, so values above
/// 65535 are clamped.
pub fn order_bound() -> usize {
    *ORDER_BOUND.get_or_init(|| {
        std::env::var("ZJKIT_ORDER_BOUND")
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .map(|b| b.min(u16::MAX as usize + 1))
            .unwrap_or(DEFAULT_ORDER_BOUND)
    })
}

pub(crate) fn check_order(order: usize) -> crate::error::Result<()> {
    let bound = order_bound();
    if order > bound {
        Err(crate::error::Error::BoundExceeded { order, bound })
    } else {
        Ok(())
    }
}

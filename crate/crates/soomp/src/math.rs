//! Scalar float math routed through one shim so the crate body never calls
//! the `std`-only inherent methods directly; the `libm` backend keeps the
//! same call sites working under `no_std`.

#[cfg(feature = "std")]
mod imp {
    pub fn cos(x: f64) -> f64 {
        x.cos()
    }
    pub fn sin(x: f64) -> f64 {
        x.sin()
    }
    pub fn sqrt(x: f64) -> f64 {
        x.sqrt()
    }
    pub fn floor(x: f64) -> f64 {
        x.floor()
    }
    pub fn abs(x: f64) -> f64 {
        x.abs()
    }
    pub fn log10(x: f64) -> f64 {
        x.log10()
    }
    pub fn powf(base: f64, exp: f64) -> f64 {
        base.powf(exp)
    }
}

#[cfg(all(not(feature = "std"), feature = "libm"))]
mod imp {
    pub fn cos(x: f64) -> f64 {
        libm::cos(x)
    }
    pub fn sin(x: f64) -> f64 {
        libm::sin(x)
    }
    pub fn sqrt(x: f64) -> f64 {
        libm::sqrt(x)
    }
    pub fn floor(x: f64) -> f64 {
        libm::floor(x)
    }
    pub fn abs(x: f64) -> f64 {
        libm::fabs(x)
    }
    pub fn log10(x: f64) -> f64 {
        libm::log10(x)
    }
    pub fn powf(base: f64, exp: f64) -> f64 {
        libm::pow(base, exp)
    }
}

pub(crate) use imp::*;

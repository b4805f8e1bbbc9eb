use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::Signed;

/// Exact integer scalars for the linear algebra: `i64`, `i128`, `BigInt`.
pub trait Scalar: Integer + Signed + Clone + Debug + Display + From<i64> + Send + Sync {}
impl<T: Integer + Signed + Clone + Debug + Display + From<i64> + Send + Sync> Scalar for T {}

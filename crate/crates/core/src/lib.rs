//! Parabolic germs over finite fields and Laurent fields: iteration, lower
//! ramification numbers, reduced forms, closed-form iterates and valuation bounds.

pub mod closed_forms;
pub mod error;
pub mod normal_form;
pub mod ramification;
pub mod rings;
pub mod series;
pub mod valuation;

#[cfg(test)]
mod testing;

//! Retry with exponential backoff and jitter. Transient failures (transport
//! errors, 5xx) are retried up to the attempt budget; 4xx-class errors are
//! surfaced immediately.

use std::future::Future;
use std::time::Duration;

use rand::Rng;

use crate::error::GatewayError;

/// Backoff schedule: delay before retry k (1-based) is
/// `initial * factor^(k-1)`, scaled by a uniform jitter in `1 ± jitter`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RetryPolicy {
    pub initial: Duration,
    pub factor: f64,
    pub jitter: f64,
    pub max_attempts: u32,
}

impl Default for RetryPolicy {
    fn default() -> Self {
        RetryPolicy {
            initial: Duration::from_secs(1),
            factor: 2.0,
            jitter: 0.2,
            max_attempts: 5,
        }
    }
}

impl RetryPolicy {
    /// Delay before the given retry (1-based). Jitter is sampled from the rng
    /// so tests can pin it.
    pub fn delay_before_retry(&self, retry: u32, rng: &mut impl Rng) -> Duration {
        let base = self.initial.as_secs_f64() * self.factor.powi(retry as i32 - 1);
        let scale = rng.random_range((1.0 - self.jitter)..=(1.0 + self.jitter));
        Duration::from_secs_f64(base * scale)
    }

    /// Run `op` until it succeeds, fails non-retryably, or the budget runs out.
    pub async fn run<T, F, Fut>(&self, mut op: F) -> Result<T, GatewayError>
    where
        F: FnMut() -> Fut,
        Fut: Future<Output = Result<T, GatewayError>>,
    {
        let mut last = None;
        for attempt in 1..=self.max_attempts {
            match op().await {
                Ok(value) => return Ok(value),
                Err(err) if err.is_retryable() => {
                    tracing::debug!(attempt, error = %err, "retryable backend failure");
                    last = Some(err);
                    if attempt < self.max_attempts {
                        let delay = {
                            let mut rng = rand::rng();
                            self.delay_before_retry(attempt, &mut rng)
                        };
                        tokio::time::sleep(delay).await;
                    }
                }
                Err(err) => return Err(err),
            }
        }
        Err(GatewayError::RetriesExhausted {
            attempts: self.max_attempts,
            last: last.map(|e| e.to_string()).unwrap_or_default(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;
    use std::sync::atomic::{AtomicU32, Ordering};

    #[test]
    fn delays_follow_the_schedule_within_jitter() {
        let policy = RetryPolicy::default();
        let mut rng = ChaCha20Rng::seed_from_u64(0);
        for retry in 1..=4u32 {
            let base = 1.0 * 2.0f64.powi(retry as i32 - 1);
            for _ in 0..200 {
                let d = policy.delay_before_retry(retry, &mut rng).as_secs_f64();
                assert!(
                    d >= base * 0.8 - 1e-9 && d <= base * 1.2 + 1e-9,
                    "retry {retry}: {d}"
                );
            }
        }
    }

    #[tokio::test(start_paused = true)]
    async fn transient_errors_retried_up_to_budget() {
        let policy = RetryPolicy {
            initial: Duration::from_millis(10),
            ..Default::default()
        };
        let calls = AtomicU32::new(0);
        let result: Result<(), _> = policy
            .run(|| {
                calls.fetch_add(1, Ordering::Relaxed);
                async { Err(GatewayError::Transport("connection reset".into())) }
            })
            .await;
        assert_eq!(calls.load(Ordering::Relaxed), 5);
        match result {
            Err(GatewayError::RetriesExhausted { attempts, last }) => {
                assert_eq!(attempts, 5);
                assert!(last.contains("connection reset"));
            }
            other => panic!("expected RetriesExhausted, got {other:?}"),
        }
    }

    #[tokio::test]
    async fn non_retryable_fails_fast() {
        let policy = RetryPolicy::default();
        let calls = AtomicU32::new(0);
        let result: Result<(), _> = policy
            .run(|| {
                calls.fetch_add(1, Ordering::Relaxed);
                async {
                    Err(GatewayError::Http {
                        status: 400,
                        body: "bad request".into(),
                    })
                }
            })
            .await;
        assert_eq!(calls.load(Ordering::Relaxed), 1);
        assert!(matches!(
            result,
            Err(GatewayError::Http { status: 400, .. })
        ));
    }

    #[tokio::test(start_paused = true)]
    async fn succeeds_after_transient_failures() {
        let policy = RetryPolicy {
            initial: Duration::from_millis(10),
            ..Default::default()
        };
        let calls = AtomicU32::new(0);
        let result = policy
            .run(|| {
                let n = calls.fetch_add(1, Ordering::Relaxed);
                async move {
                    if n < 2 {
                        Err(GatewayError::Http {
                            status: 503,
                            body: "busy".into(),
                        })
                    } else {
                        Ok("done")
                    }
                }
            })
            .await;
        assert_eq!(result.unwrap(), "done");
        assert_eq!(calls.load(Ordering::Relaxed), 3);
    }
}

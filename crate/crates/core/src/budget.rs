use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

/// Wall-clock allowance for a search, with a shared stop flag.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None }
    }

    pub fn millis(ms: u64) -> Self {
        Budget {
            deadline: Some(Instant::now() + Duration::from_millis(ms)),
        }
    }

    pub fn from_millis(ms: Option<u64>) -> Self {
        ms.map_or_else(Self::unlimited, Self::millis)
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::unlimited()
    }
}

/// Budget plus a flag that any worker may raise to stop the others.
pub(crate) struct Stopper {
    budget: Budget,
    stopped: AtomicBool,
}

impl Stopper {
    pub(crate) fn new(budget: Budget) -> Self {
        Stopper {
            budget,
            stopped: AtomicBool::new(false),
        }
    }

    pub(crate) fn should_stop(&self) -> bool {
        if self.stopped.load(Ordering::Relaxed) {
            return true;
        }
        if self.budget.expired() {
            self.stopped.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }
}

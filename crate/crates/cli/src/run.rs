use std::f64::consts::TAU;

use spincs_core::coherent::expectation_spin_at;
use spincs_core::dynamics::{
    canonical_rhs, cyclic_omega, cyclic_theta, delta_zero_omega, hamiltonian_expectation, integrate_trajectory, precession_trajectory,
    CyclicCase,
};
use spincs_core::phases::{interference_intensity, scenario_closed_form, total_phase, Scenario};
use spincs_core::{EulerAngles, FiducialVector, FieldProtocol, GaugeChoice, Trajectory};

use crate::config::{Resonance, ScenarioConfig};
use crate::error::{CliError, CliResult};
use crate::report::{Comparison, RunReport};

const CASE_EPS: f64 = 1e-12;

/// A configuration with the resonance resolved into concrete numbers.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub fiducial: FiducialVector,
    pub field: FieldProtocol,
    pub omega0: EulerAngles,
    pub t_final: f64,
    pub n_steps: usize,
    /// `None` for fiducials whose dynamics is plain precession.
    pub gauge: Option<GaugeChoice>,
    pub scenario: Option<Scenario>,
    /// Number of whole periods covered on a cyclic orbit.
    pub cycles: Option<f64>,
    pub tolerance: f64,
}

fn cyclic_case(fid: &FiducialVector) -> CliResult<CyclicCase> {
    if fid.ladder_sum().norm() < CASE_EPS {
        Ok(CyclicCase::PureM)
    } else if fid.a0().abs() < CASE_EPS {
        Ok(CyclicCase::A3Case)
    } else {
        Err(CliError::InvalidConfig("resonance modes need a fiducial with either no adjacent-level coherence or zero ⟨S₃⟩".into()))
    }
}

impl Prepared {
    pub fn new(cfg: &ScenarioConfig) -> CliResult<Self> {
        cfg.validate()?;
        let fiducial = cfg.fiducial.build(cfg.spin())?;
        let mut field = cfg.field;
        let mut omega0 = cfg.initial;
        let case = if cfg.resonance == Resonance::None { None } else { Some(cyclic_case(&fiducial)?) };
        if let Some(case) = case {
            match cfg.resonance {
                Resonance::ThetaFromOmega => omega0.theta = cyclic_theta(&field, case)?,
                Resonance::OmegaFromTheta => field.drive_omega = cyclic_omega(&field, case, omega0.theta)?,
                Resonance::DeltaZero => {
                    field.drive_omega = delta_zero_omega(&field)?;
                    omega0.theta = cyclic_theta(&field, case)?;
                }
                Resonance::None => unreachable!("no case is derived without a resonance"),
            }
            omega0.phi = 0.0;
        }
        let period = field.period();
        let t_final = match (cfg.duration, cfg.periods) {
            (Some(d), _) => d,
            (None, p) => {
                let p = p.unwrap_or(1.0);
                p * period.ok_or_else(|| CliError::InvalidConfig("periods need a nonzero drive_omega; give duration instead".into()))?
            }
        };
        let gauge = (!fiducial.is_inert()).then(|| {
            cfg.gauge.unwrap_or(match case {
                Some(CyclicCase::A3Case) => GaugeChoice::PsiFrozen,
                _ if fiducial.ladder_sum().norm() < CASE_EPS => GaugeChoice::PsiLocked,
                _ => GaugeChoice::PsiFrozen,
            })
        });
        let scenario = cfg.fiducial.scenario();
        let cycles = match (case, cfg.duration, cfg.periods) {
            (Some(_), None, p) => Some(p.unwrap_or(1.0)).filter(|k| k.fract() == 0.0),
            _ => None,
        };
        Ok(Self { fiducial, field, omega0, t_final, n_steps: cfg.n_steps, gauge, scenario, cycles, tolerance: cfg.tolerance })
    }

    pub fn trajectory(&self) -> CliResult<Trajectory> {
        Ok(match self.gauge {
            None => precession_trajectory(self.omega0, &self.field, self.t_final, self.n_steps)?,
            Some(g) => integrate_trajectory(&self.fiducial, self.omega0, &self.field, g, self.t_final, self.n_steps)?,
        })
    }

    fn consistency_residual(&self, traj: &Trajectory) -> CliResult<Option<f64>> {
        let Some(gauge) = self.gauge else { return Ok(None) };
        let mut worst = 0.0f64;
        for (t, om) in traj.times().iter().zip(traj.omegas()) {
            worst = worst.max(canonical_rhs(&self.fiducial, om, &self.field, *t, gauge)?.residual);
        }
        Ok(Some(worst))
    }

    fn comparisons(&self, traj: &Trajectory, got: &spincs_core::PhaseResult) -> CliResult<Vec<Comparison>> {
        let tol = self.tolerance;
        let mut out = Vec::new();
        match (self.scenario, self.cycles) {
            (Some(Scenario::SpecialSpin1), _) => {
                out.push(Comparison::new("gamma", got.gamma, 0.0, tol));
                out.push(Comparison::new("delta", got.delta, 0.0, tol));
            }
            (Some(scenario), Some(k)) => {
                let want = scenario_closed_form(scenario, &self.field, self.omega0.theta)?;
                out.push(Comparison::new("gamma", got.gamma, k * want.gamma, tol));
                out.push(Comparison::new("delta", got.delta, k * want.delta, tol));
            }
            _ => {}
        }
        if self.cycles.is_some() {
            out.push(Comparison::new("closure", traj.closure_residual(), 0.0, tol));
        }
        Ok(out)
    }

    pub fn execute(&self) -> CliResult<(RunReport, Trajectory)> {
        let traj = self.trajectory()?;
        let phases = total_phase(&self.fiducial, &traj, &self.field)?;
        let comparisons = self.comparisons(&traj, &phases)?;
        let report = RunReport {
            scenario: self.scenario.map(|s| s.to_string()),
            two_s: self.fiducial.spin().two_s(),
            gauge: self.gauge,
            initial: self.omega0,
            field: self.field,
            t_final: self.t_final,
            n_steps: self.n_steps,
            intensity: interference_intensity(&phases),
            phases,
            winding_turns: traj.winding().map(|w| w / TAU),
            closure_residual: traj.closure_residual(),
            consistency_residual: self.consistency_residual(&traj)?,
            passed: comparisons.iter().all(|c| c.passed),
            comparisons,
        };
        Ok((report, traj))
    }

    /// Rows `t, φ, θ, ψ, φ̇, θ̇, ψ̇, H, ⟨S₃⟩` of the trajectory.
    pub fn rows(&self, traj: &Trajectory) -> Vec<[f64; 9]> {
        traj.times()
            .iter()
            .zip(traj.omegas())
            .zip(traj.omega_dots())
            .map(|((&t, om), d)| {
                [
                    t,
                    om.phi,
                    om.theta,
                    om.psi,
                    d.phi_dot,
                    d.theta_dot,
                    d.psi_dot,
                    hamiltonian_expectation(&self.fiducial, om, &self.field, t),
                    expectation_spin_at(&self.fiducial, om).s3,
                ]
            })
            .collect()
    }
}

import math
import unittest
from itertools import product

import numpy as np

from common.exceptions import InvalidParameterException
from common.models import Branch
from sqrac.protocol import (
    BITS,
    KrausPair,
    ProtocolParams,
    QubitObservable,
    alice_direction,
    alice_encoding_vector,
    alice_povm,
    bob_direction,
    bob_kraus,
    bob_observable,
    charlie_conditional_vector,
    charlie_conditional_vector_closed,
    charlie_povm,
    decoded_bit,
    outcome_probability,
    p_ab_bruteforce,
    p_ab_closed,
    p_abc,
    p_abc_bruteforce,
    p_ac_bruteforce,
    p_ac_closed,
    per_bit_success,
    rho_ac,
    sharpness_from_theta_lambda,
    success_report,
    theta_lambda_from_sharpness,
    wave_plate_angle,
)
from sqrac.qcore import IDENTITY, BlochVector, dagger, hermitian_eigenvalues, max_entangled_state


def random_params(generator: np.random.Generator) -> ProtocolParams:
    return ProtocolParams(
        eta0=generator.uniform(0, 1),
        eta1=generator.uniform(0, 1),
        alpha=generator.uniform(0, math.pi / 4),
        beta=generator.uniform(0, math.pi / 4),
    )


class TestProtocolParams(unittest.TestCase):
    def test_ranges(self):
        with self.assertRaises(InvalidParameterException):
            ProtocolParams(eta0=1.1, eta1=0.5, alpha=0.1, beta=0.1)
        with self.assertRaises(InvalidParameterException):
            ProtocolParams(eta0=0.5, eta1=-0.1, alpha=0.1, beta=0.1)
        with self.assertRaises(InvalidParameterException):
            ProtocolParams(eta0=0.5, eta1=0.5, alpha=math.pi / 2, beta=0.1)
        with self.assertRaises(InvalidParameterException):
            ProtocolParams(eta0=0.5, eta1=0.5, alpha=0.1, beta=-0.1)

    def test_unbiased(self):
        params = ProtocolParams.unbiased(0.3, 0.4)
        self.assertEqual(math.pi / 4, params.alpha)
        self.assertEqual(math.pi / 4, params.beta)
        self.assertEqual(0.3, params.sharpness(0))
        self.assertEqual(0.4, params.sharpness(1))
        self.assertEqual(0.1, params.with_angles(0.1, 0.2).alpha)


class TestMeasurements(unittest.TestCase):
    def test_povm_completeness_and_positivity(self):
        generator = np.random.default_rng(3)
        for _ in range(1000):
            observable = QubitObservable(
                direction=BlochVector.in_xz_plane(generator.uniform(-math.pi, math.pi)),
                sharpness=generator.uniform(0, 1),
            )
            np.testing.assert_allclose(observable.povm(0) + observable.povm(1), IDENTITY, atol=1e-12)
            for outcome in BITS:
                self.assertGreaterEqual(hermitian_eigenvalues(observable.povm(outcome)).min(), -1e-12)
                kraus = observable.kraus(outcome)
                # K†K reproduces the POVM element
                np.testing.assert_allclose(dagger(kraus) @ kraus, observable.povm(outcome), atol=1e-12)
            observable.kraus_pair()

    def test_projective_povms(self):
        for x, a in product(BITS, repeat=2):
            projector = alice_povm(x, a)
            np.testing.assert_allclose(projector @ projector, projector, atol=1e-12)
        np.testing.assert_allclose(alice_povm(1, 0), np.diag([1, 0]), atol=1e-12)
        for z in BITS:
            np.testing.assert_allclose(charlie_povm(z, 0, 0.4) + charlie_povm(z, 1, 0.4), IDENTITY, atol=1e-12)
        # at beta = 0 both of Charlie's settings measure σx
        np.testing.assert_allclose(charlie_povm(0, 0, 0.0), charlie_povm(1, 0, 0.0), atol=1e-12)

    def test_decoded_bit(self):
        # Alice announces x0 ⊕ a, the decoder adds its outcome
        self.assertEqual(1, decoded_bit(1, 0, 0))
        self.assertEqual(0, decoded_bit(1, 1, 0))
        self.assertEqual(0, decoded_bit(0, 1, 1))

    def test_incomplete_kraus_pair(self):
        with self.assertRaises(InvalidParameterException):
            KrausPair(k0=IDENTITY, k1=IDENTITY)

    def test_observable_validation(self):
        with self.assertRaises(InvalidParameterException):
            QubitObservable(direction=BlochVector(x=0.5, y=0.0, z=0.0))
        with self.assertRaises(InvalidParameterException):
            QubitObservable(direction=BlochVector(x=1.0, y=0.0, z=0.0), sharpness=1.5)

    def test_bob_kraus_matches_sharpness(self):
        for theta_degrees in (0.0, 4.0, 8.0, 15.0, 22.5):
            theta_lambda = math.radians(theta_degrees)
            observable = QubitObservable(direction=bob_direction(1, 0.3), sharpness=sharpness_from_theta_lambda(theta_lambda))
            for b in BITS:
                kraus = bob_kraus(1, b, 0.3, theta_lambda)
                np.testing.assert_allclose(dagger(kraus) @ kraus, observable.povm(b), atol=1e-12)

    def test_bob_kraus_without_information(self):
        np.testing.assert_allclose(bob_kraus(0, 0, 0.2, math.pi / 8), IDENTITY / math.sqrt(2), atol=1e-12)

    def test_channel_output_is_a_state(self):
        generator = np.random.default_rng(5)
        for _ in range(1000):
            state = rho_ac(max_entangled_state(), random_params(generator))
            self.assertAlmostEqual(1.0, np.trace(state.matrix).real, places=12)
            self.assertGreaterEqual(hermitian_eigenvalues(state.matrix).min(), -1e-10)


class TestAngles(unittest.TestCase):
    def test_sharpness_from_theta_lambda(self):
        self.assertAlmostEqual(1.0, sharpness_from_theta_lambda(0.0), places=12)
        self.assertAlmostEqual(math.cos(math.radians(32)), sharpness_from_theta_lambda(math.radians(8)), places=12)
        self.assertAlmostEqual(0.848, sharpness_from_theta_lambda(math.radians(8)), places=3)
        self.assertAlmostEqual(0.0, sharpness_from_theta_lambda(math.pi / 8), places=12)
        with self.assertRaises(InvalidParameterException):
            sharpness_from_theta_lambda(math.radians(23))
        with self.assertRaises(InvalidParameterException):
            sharpness_from_theta_lambda(-0.01)

    def test_theta_lambda_from_sharpness(self):
        for theta_degrees in (0.0, 3.0, 11.0, 22.5):
            theta_lambda = math.radians(theta_degrees)
            self.assertAlmostEqual(theta_lambda, theta_lambda_from_sharpness(sharpness_from_theta_lambda(theta_lambda)), places=9)

    def test_wave_plate_angles_of_alice(self):
        expected = {(0, 0): 22.5, (0, 1): -22.5, (1, 0): 0.0, (1, 1): 45.0}
        for (x, a), angle in expected.items():
            plate = wave_plate_angle(alice_direction(x).scaled(1 - 2 * a))
            self.assertAlmostEqual(angle, math.degrees(plate), places=9)

    def test_wave_plate_angles_of_bob(self):
        angles = {
            round(math.degrees(wave_plate_angle(bob_direction(y, math.pi / 4).scaled(1 - 2 * b))), 6)
            for y, b in product(BITS, repeat=2)
        }
        self.assertEqual({11.25, -11.25, 33.75, -33.75}, angles)

    def test_wave_plate_rejects_out_of_plane(self):
        with self.assertRaises(InvalidParameterException):
            wave_plate_angle(BlochVector(x=0.0, y=1.0, z=0.0))


class TestSuccessProbabilities(unittest.TestCase):
    def test_closed_forms_match_brute_force(self):
        generator = np.random.default_rng(2024)
        for _ in range(1000):
            params = random_params(generator)
            self.assertAlmostEqual(p_ab_bruteforce(params), p_ab_closed(params), delta=1e-10)
            self.assertAlmostEqual(p_ac_bruteforce(params), p_ac_closed(params), delta=1e-10)
            self.assertAlmostEqual(p_abc_bruteforce(params), p_abc(params), delta=1e-10)

    def test_projective_unbiased(self):
        params = ProtocolParams.unbiased(1.0, 1.0)
        self.assertAlmostEqual(0.853553, p_ab_closed(params), places=6)
        self.assertAlmostEqual(0.676777, p_ac_closed(params), places=6)

    def test_no_measurement(self):
        params = ProtocolParams.unbiased(0.0, 0.0)
        self.assertAlmostEqual(0.5, p_ab_closed(params), places=12)
        self.assertAlmostEqual(0.5, p_ab_bruteforce(params), places=12)
        # Charlie receives the untouched qubit
        self.assertAlmostEqual(0.853553, p_ac_closed(params), places=6)

    def test_classical_bound_on_unbiased_diagonal(self):
        eta = 1 / math.sqrt(2)
        self.assertAlmostEqual(0.75, p_ab_closed(ProtocolParams.unbiased(eta, eta)), places=12)

    def test_hand_evaluated_points(self):
        eta = math.cos(math.radians(8))
        params = ProtocolParams(eta0=eta, eta1=eta, alpha=math.radians(1.12), beta=math.radians(7.92))
        self.assertAlmostEqual(0.75234, p_ac_closed(params), delta=2e-5)

        params = ProtocolParams(eta0=0.99, eta1=0.99, alpha=math.radians(1.12), beta=0.0)
        self.assertAlmostEqual(0.752291, p_ab_closed(params), delta=1e-6)

        params = ProtocolParams.unbiased(1 / math.sqrt(2), math.cos(math.radians(8)))
        self.assertAlmostEqual(0.4748, p_abc(params), delta=1e-4)

    def test_outcome_probabilities_are_normalised(self):
        params = random_params(np.random.default_rng(17))
        for x, y, z in product(BITS, repeat=3):
            total = sum(outcome_probability(params, x, y, z, a, b, c) for a, b, c in product(BITS, repeat=3))
            self.assertAlmostEqual(1.0, total, places=12)

    def test_per_bit_success(self):
        eta = math.cos(math.radians(16))
        params = ProtocolParams.unbiased(eta, eta)
        per_bit = per_bit_success(params)
        # unbiased directions decode both bits equally well
        self.assertAlmostEqual(per_bit['p_ab_x0'], per_bit['p_ab_x1'], places=12)
        self.assertAlmostEqual(0.5 + eta * math.sqrt(2) / 4, per_bit['p_ab_x0'], places=12)
        self.assertAlmostEqual(p_ac_closed(params), (per_bit['p_ac_x0'] + per_bit['p_ac_x1']) / 2, places=12)

    def test_success_report(self):
        params = ProtocolParams.unbiased(0.9, 0.8)
        report = success_report(params, Branch.UNBIASED)
        self.assertEqual(Branch.UNBIASED, report.branch)
        self.assertEqual(min(report.p_ab, report.p_ac), report.minimum)
        self.assertEqual(p_abc(params), report.p_abc)


class TestConditionalStates(unittest.TestCase):
    def test_alice_encoding_vector(self):
        self.assertEqual(alice_direction(0), alice_encoding_vector(1, 1, 0))
        self.assertEqual(alice_direction(1).scaled(-1), alice_encoding_vector(0, 1, 1))

    def test_charlie_closed_form_matches_channel(self):
        generator = np.random.default_rng(23)
        for _ in range(200):
            params = random_params(generator)
            for x, a in product(BITS, repeat=2):
                np.testing.assert_allclose(
                    charlie_conditional_vector_closed(params, x, a).to_array(),
                    charlie_conditional_vector(params, x, a).to_array(),
                    atol=1e-10,
                )

    def test_projective_bob_keeps_bloch_vector_in_x(self):
        vector = charlie_conditional_vector(ProtocolParams(eta0=1.0, eta1=1.0, alpha=0.0, beta=0.0), 0, 0)
        self.assertAlmostEqual(1.0, vector.x, places=12)
        self.assertTrue(vector.is_physical())

    def test_bob_observable_sharpness(self):
        params = ProtocolParams(eta0=0.2, eta1=0.7, alpha=0.3, beta=0.1)
        self.assertEqual(0.7, bob_observable(1, params).sharpness)

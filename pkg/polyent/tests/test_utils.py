import os
import json
import time
import tempfile
import threading

import numpy as np
from django.test import SimpleTestCase

from polyent.exceptions import ArgumentError
from polyent.policy import NumericPolicy
from polyent.utils import (params_parser, params_section, split_numbers,
                           format_number, exception_to_text, ReportEncoder,
                           FileLock, ThreadedRunner)


class ParamsTest(SimpleTestCase):
    def test_parser(self):
        params = params_parser('optimizer.restarts=32 policy.slack=1e-9'
                               ' note="a b" flag=True empty=None x=\'1\'')
        self.assertEqual(params, {
            'optimizer.restarts': 32, 'policy.slack': 1e-9, 'note': 'a b',
            'flag': True, 'empty': None, 'x': '1',
        })
        self.assertEqual(params_parser(None), {})

    def test_section(self):
        params = {'optimizer.restarts': 4, 'seed': 1, 'policy.psd': 1e-8}
        self.assertEqual(params_section(params, 'optimizer'),
                         {'restarts': 4})
        self.assertEqual(params_section(None, 'policy'), {})

    def test_split_numbers(self):
        self.assertEqual(split_numbers('0.5,1, 1.5'), [0.5, 1.0, 1.5])
        self.assertEqual(split_numbers((1, 2)), [1.0, 2.0])
        with self.assertRaises(ArgumentError):
            split_numbers('0.5,a')

    def test_format_number(self):
        self.assertEqual(format_number(1 / 3), '0.333333333')
        self.assertEqual(format_number(2.0), '2')


class PolicyTest(SimpleTestCase):
    def test_overrides(self):
        policy = NumericPolicy(slack=1e-9)
        self.assertEqual(policy.slack, 1e-9)
        self.assertEqual(policy.norm, NumericPolicy.norm)
        self.assertEqual(policy.replace(psd=1e-6).slack, 1e-9)
        self.assertIn('reconstruction', policy.to_dict())
        with self.assertRaises(ArgumentError):
            NumericPolicy(speed=1)


class EncoderTest(SimpleTestCase):
    def test_numpy_types(self):
        data = {'a': np.float64(0.5), 'b': np.int64(3), 'c': np.bool_(True),
                'd': np.arange(2), 'e': 1 + 2j}
        self.assertEqual(json.loads(json.dumps(data, cls=ReportEncoder)), {
            'a': 0.5, 'b': 3, 'c': True, 'd': [0, 1], 'e': [1.0, 2.0]})

    def test_exception_to_text(self):
        try:
            raise ArgumentError('broken')
        except ArgumentError as e:
            error, text = e, exception_to_text(e)
        self.assertIn('ArgumentError: broken', text)
        self.assertIs(exception_to_text(error), text)


class FileLockTest(SimpleTestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.directory.cleanup()

    def test_lock_and_unlock(self):
        first = FileLock(self.directory.name, lockname='a.lock')
        second = FileLock(self.directory.name, lockname='a.lock')
        self.assertTrue(first.lock())
        self.assertFalse(second.lock())
        self.assertTrue(first.check())
        self.assertGreater(first.check(astime=True), 0)
        first.unlock()
        self.assertFalse(first.check())
        self.assertTrue(second.lock())
        second.unlock()

    def test_stale_lock_is_taken_over(self):
        lock = FileLock(self.directory.name, locktime=10)
        self.assertTrue(lock.lock())
        past = time.time() - 60
        os.utime(lock.get_name(), (past, past))
        self.assertTrue(FileLock(self.directory.name, locktime=10).lock())


def square(x):
    if x == 3:
        raise ArgumentError('three')
    time.sleep(0.001 * (5 - x))
    return x * x


class ThreadedRunnerTest(SimpleTestCase):
    def run_squares(self, threads):
        seen = []
        runner = ThreadedRunner(threads=threads,
                                callback=lambda task: seen.append(task.index))
        for i in range(6):
            runner.add(square, i)
        return runner.run(), seen

    def test_results_by_index(self):
        for threads in (1, 4):
            tasks, seen = self.run_squares(threads)
            self.assertEqual([i.index for i in tasks], list(range(6)))
            self.assertEqual([i.result for i in tasks],
                             [0, 1, 4, None, 16, 25])
            self.assertEqual(sorted(seen), list(range(6)))

    def test_errors_are_stored(self):
        tasks, seen = self.run_squares(2)
        self.assertIsInstance(tasks[3].error, ArgumentError)
        self.assertIn('three', exception_to_text(tasks[3].error))
        self.assertEqual(str(tasks[3]), 'RunnerTask (3, error)')

    def test_threads_are_used(self):
        names = set()
        runner = ThreadedRunner(threads=3)
        for i in range(6):
            runner.add(lambda: names.add(threading.current_thread().name)
                       or time.sleep(0.01))
        runner.run()
        self.assertNotIn(threading.main_thread().name, names)

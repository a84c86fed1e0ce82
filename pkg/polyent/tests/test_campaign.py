import io
import os
import json
import tempfile

from django.test import SimpleTestCase

from polyent.base import (CampaignConfig, CampaignSummary, ConsoleLogger,
                          RandomCampaign)
from polyent.exceptions import ArgumentError
from polyent.measures import BLOCK_SUM
from polyent.polygamy import PolygamyReport
from polyent.roof import OptimizerSettings
from polyent import signals


class CampaignTestCase(SimpleTestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.output = self.directory.name

    def tearDown(self):
        self.directory.cleanup()

    def run_campaign(self, **kwargs):
        kwargs.setdefault('output', self.output)
        stream = io.StringIO()
        campaign = RandomCampaign(CampaignConfig(**kwargs),
                                  loggers=[ConsoleLogger(stream)])
        status = campaign.run()
        return status, campaign, stream.getvalue()

    def read(self, name):
        with open(os.path.join(self.output, name), encoding='utf-8') as f:
            return f.read()


class ZeroViolationTest(CampaignTestCase):
    def assertNoViolations(self, campaign):
        summary = campaign.summary.to_dict()
        self.assertEqual(summary['errors'], 0)
        for name, row in summary['inequalities'].items():
            self.assertEqual(row['confirmed_violations'], 0, msg=name)
            self.assertEqual(row['tentative_violations'], 0, msg=name)
            self.assertEqual(row['checked'], row['held'], msg=name)
            self.assertGreaterEqual(row['min_slack'], -1e-10, msg=name)

    def test_qubits(self):
        status, campaign, log = self.run_campaign(
            dims=(2, 2, 2), count=500, inequalities=('th1', 'eq2', 'eq4'))
        self.assertEqual(status, 0)
        self.assertNoViolations(campaign)
        rows = campaign.summary.to_dict()['inequalities']
        self.assertEqual(rows['th1']['checked'], 2000)
        self.assertEqual(rows['dual_ca_eq2']['checked'], 500)
        self.assertIn('SUCCESS', log)
        queue = log.split('ITEMS Queue')[1].split('FINISHED')[0]
        self.assertNotIn('x', queue)

    def test_qubit_qubit_qutrit(self):
        status, campaign, log = self.run_campaign(
            dims=(2, 2, 3), count=500, inequalities=('th1', 'eq4'))
        self.assertEqual(status, 0)
        self.assertNoViolations(campaign)

    def test_reports_file(self):
        self.run_campaign(dims=(2, 2, 2), count=3,
                          inequalities=('th1', 'eq4'), exponents=(1.0,))
        lines = [json.loads(i) for i in
                 self.read('reports.jsonl').splitlines()]
        self.assertEqual([(i['index'], i['inequality_id']) for i in lines], [
            (0, 'th1'), (0, 'tau_sq_eq4'), (1, 'th1'), (1, 'tau_sq_eq4'),
            (2, 'th1'), (2, 'tau_sq_eq4')])
        self.assertEqual(lines[2]['seed'], [0, 1])
        self.assertEqual(lines[0]['status'], 'held')


class BlockSumCampaignTest(CampaignTestCase):
    def test_counts_add_up(self):
        status, campaign, log = self.run_campaign(
            dims=(2, 2, 2), count=20, inequalities=('eq4',),
            lhs_mode=BLOCK_SUM)
        self.assertEqual(status, 0)
        row = campaign.summary.to_dict()['inequalities']['tau_sq_eq4']
        self.assertEqual(row['checked'], 20)
        self.assertEqual(row['held'] + row['tentative_violations'] +
                         row['confirmed_violations'], 20)
        self.assertEqual(row['tentative_violations'], 0)
        summary = json.loads(self.read('summary.json'))
        self.assertEqual(summary['environment']['config']['lhs_mode'],
                         BLOCK_SUM)


class DeterminismTest(CampaignTestCase):
    def summary_text(self, **kwargs):
        status, campaign, log = self.run_campaign(
            dims=(2, 2, 2), count=40, inequalities=('th1', 'eq4'), seed=11,
            **kwargs)
        self.assertEqual(status, 0)
        return self.read('summary.json'), self.read('reports.jsonl')

    def test_repeated_runs(self):
        self.assertEqual(self.summary_text(), self.summary_text())

    def test_threads(self):
        self.assertEqual(self.summary_text(threads=1),
                         self.summary_text(threads=2))

    def test_seed_changes_reports(self):
        first = self.summary_text()[1]
        status, campaign, log = self.run_campaign(
            dims=(2, 2, 2), count=40, inequalities=('th1', 'eq4'), seed=12)
        self.assertNotEqual(first, self.read('reports.jsonl'))


class RunLoopTest(CampaignTestCase):
    def test_locked_directory(self):
        with open(os.path.join(self.output, 'randomcampaign.lock'),
                  'w') as f:
            f.write('')
        status, campaign, log = self.run_campaign(count=2)
        self.assertEqual(status, 1)
        self.assertIn('C A M P A I G N   I S   L O C K E D', log)
        self.assertIn('FAIL', log)
        self.assertIsNone(campaign.summary)
        self.assertTrue(os.path.exists(
            os.path.join(self.output, 'randomcampaign.lock')))

    def test_item_errors(self):
        # dual assistance bound is qubits only
        status, campaign, log = self.run_campaign(
            dims=(3, 2), count=2, inequalities=('eq2',))
        self.assertEqual(status, 1)
        self.assertEqual(campaign.summary.errors, 2)
        self.assertIn('EE', log)
        lines = [json.loads(i) for i in
                 self.read('reports.jsonl').splitlines()]
        self.assertEqual([i['index'] for i in lines], [0, 1])
        self.assertIn('qubits only', lines[0]['error'])

    def test_signals(self):
        received = []

        def pre(sender, campaign, **kwargs):
            received.append(('pre', sender, campaign.summary))

        def post(sender, campaign, summary, **kwargs):
            received.append(('post', sender, summary.to_dict()['errors']))

        signals.campaign_pre_launch.connect(pre)
        signals.campaign_post_launch.connect(post)
        try:
            self.run_campaign(count=2)
        finally:
            signals.campaign_pre_launch.disconnect(pre)
            signals.campaign_post_launch.disconnect(post)
        self.assertEqual(received, [('pre', RandomCampaign, None),
                                    ('post', RandomCampaign, 0)])

    def test_optimizer_warnings(self):
        status, campaign, log = self.run_campaign(
            dims=(2, 2, 2), count=2, inequalities=('th3',),
            settings=OptimizerSettings(restarts=1, max_iters=1))
        self.assertEqual(status, 0)
        lines = [json.loads(i) for i in
                 self.read('reports.jsonl').splitlines()]
        for line in lines:
            self.assertLessEqual(set(line['warnings']), {'AB', 'AC'})
            self.assertEqual(bool(line['warnings']), 'state %s, optimizer'
                             ' did not converge' % line['index'] in log)

    def test_banner(self):
        status, campaign, log = self.run_campaign(
            dims=(2, 2, 3), count=1, inequalities=('th1', 'eq4'),
            exponents=(0.5, 2.0))
        self.assertIn('P O L Y E N T', log)
        self.assertIn('1 x 2x2x3, seed 0, cut A|BC', log)
        self.assertIn('th1 [0.5, 2.0]', log)
        self.assertIn('U N L O C K E D', log)


class ConfigTest(SimpleTestCase):
    def test_defaults(self):
        config = CampaignConfig()
        self.assertEqual(config.exponents_for('th1'), [0.5, 1.0, 1.5, 2.0])
        self.assertEqual(config.exponents_for('th3'), [0.5])
        self.assertEqual(config.exponents_for('eq4'), [None])
        self.assertEqual(CampaignConfig(inequalities=['eq4']).inequalities,
                         ('tau_sq_eq4',))

    def test_threads_run_restarts_inline(self):
        config = CampaignConfig(threads=4)
        self.assertEqual((config.threads, config.settings.threads), (4, 1))

    def test_errors(self):
        with self.assertRaises(ArgumentError):
            CampaignConfig(count=0)
        with self.assertRaises(ArgumentError):
            CampaignConfig(dims=(2,))
        with self.assertRaises(ArgumentError):
            CampaignConfig(lhs_mode='average')
        with self.assertRaises(ArgumentError):
            CampaignConfig(inequalities=('th2',), exponents=(2.5,))
        with self.assertRaises(ArgumentError):
            CampaignConfig(inequalities=('th4',), exponents=(1.5,))
        with self.assertRaises(ArgumentError):
            CampaignConfig(inequalities=('nothing',))

    def test_empty_summary(self):
        summary = CampaignSummary(CampaignConfig(inequalities=('th1',)))
        row = summary.to_dict()['inequalities']['th1']
        self.assertEqual(row['checked'], 0)
        self.assertIsNone(row['min_slack'])
        self.assertEqual(summary.confirmed_violations, 0)

    def test_status_counts(self):
        summary = CampaignSummary(CampaignConfig(inequalities=('th2',)))
        for holds, condition, tentative in ((True, True, False),
                                            (False, False, False),
                                            (False, False, True),
                                            (False, True, True),
                                            (False, True, False)):
            summary.add(PolygamyReport(inequality_id='th2', slack=-0.1,
                                       holds=holds,
                                       condition_status=condition,
                                       tentative=tentative))
        row = summary.to_dict()['inequalities']['th2']
        self.assertEqual((row['checked'], row['held'],
                          row['condition_failed'],
                          row['tentative_violations'],
                          row['confirmed_violations']), (5, 1, 2, 1, 1))
        self.assertEqual(summary.confirmed_violations, 1)


class LoggersTest(CampaignTestCase):
    def test_passed_list_untouched(self):
        passed = [ConsoleLogger(io.StringIO())]
        campaign = RandomCampaign(CampaignConfig(output=self.output, count=1),
                                  loggers=passed)
        self.assertEqual(len(passed), 1)
        self.assertEqual(len(campaign.loggers), 2)
        campaign.run()
        self.assertEqual(len(passed), 1)

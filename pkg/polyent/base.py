"""
Campaign coordination: loggers, campaign configuration, summary and the
random campaign run loop.

Campaign run (BaseCampaign.run):

1.  Print the banner (name, options, structure).
2.  Lock the output directory (lockable campaigns only) and call firstlog
    on every logger.
3.  Send campaign_pre_launch, run every item through utils.ThreadedRunner,
    one progress character per item:
        .  every report held
        c  a violated bound whose ordering condition failed
        t  at least one tentative violation (optimizer-backed rhs)
        x  at least one confirmed violation
        E  the item raised, traceback goes to the report log
4.  Write the item records in index order (with a warning line for every
    state whose optimizer did not converge), reduce the summary, send
    campaign_post_launch.
5.  Unlock, print the footer and call finallog. Status 0 is success,
    status 1 means an error (locked directory, raised exception or failed
    items).
"""
import os
import sys
import json
import datetime
import threading

from django.conf import settings as django_settings
from django.utils import timezone

from .exceptions import ArgumentError, LockedCampaignException
from .linalg import PartitionSpec, haar_random_pure
from .measures import PURE_CONCURRENCE, LHS_MODES
from .policy import get_policy
from .polygamy import (CheckInputs, PolygamyReport, CHECKS, DEFAULT_GRIDS,
                       resolve, run_check)
from .roof import OptimizerSettings
from .utils import (exception_to_text, FileLock, ThreadedRunner,
                    ReportEncoder)
from . import settings, signals, get_version


PROGRESS = {'held': '.', 'condition-failed': 'c', 'tentative': 't',
            'confirmed': 'x', 'error': 'E'}


def now():
    if django_settings.configured:
        return timezone.localtime(timezone.now())
    return datetime.datetime.now()


# Loggers
# -------
class BaseLogger(object):
    def log(self, value):
        raise NotImplementedError

    def record(self, data):
        pass

    def finallog(self, name=None, status=True):
        pass

    def firstlog(self, name=None, options=True):
        pass


class ConsoleLogger(BaseLogger):
    def __init__(self, stream=None):
        self.stream = stream

    def log(self, value):
        stream = self.stream or sys.stdout
        stream.write(value)
        stream.flush()


class ReportFileLogger(BaseLogger):
    """One JSON object per line, writes serialized by a lock."""
    filename = 'reports.jsonl'

    def __init__(self, directory, filename=None):
        self.path = os.path.join(directory, filename or self.filename)
        self.lock = threading.Lock()
        self.file = None

    def log(self, value):
        pass

    def record(self, data):
        line = json.dumps(data, cls=ReportEncoder, sort_keys=True,
                          ensure_ascii=False)
        with self.lock:
            self.file.write(line + '\n')

    def firstlog(self, name=None, options=True):
        os.makedirs(os.path.dirname(self.path) or '.', exist_ok=True)
        self.file = open(self.path, 'w', encoding='utf-8')

    def finallog(self, name=None, status=True):
        if self.file:
            self.file.close()
            self.file = None


# Configuration and summary
# -------------------------
class CampaignConfig(object):
    def __init__(self, dims=(2, 2, 2), count=500, seed=0, exponents=None,
                 inequalities=('th1',), lhs_mode=PURE_CONCURRENCE,
                 output=None, cut=None, settings=None, policy=None,
                 threads=None):
        self.dims = tuple(int(i) for i in dims)
        self.count = int(count)
        self.seed = int(seed)
        self.inequalities = tuple(resolve(i) for i in inequalities)
        self.exponents = (None if exponents is None else
                          tuple(float(i) for i in exponents))
        self.lhs_mode = lhs_mode
        self.output = output
        self.part = (PartitionSpec.from_cut(cut, len(self.dims)) if cut else
                     PartitionSpec.default(len(self.dims)))
        settings = settings or OptimizerSettings.default()
        self.policy = get_policy(policy)
        self.threads = int(threads or settings.threads or 1)
        # items run in parallel, restarts inline
        self.settings = (settings.replace(threads=1) if self.threads > 1
                         else settings)

        if self.count < 1:
            raise ArgumentError('Campaign count should be >= 1.')
        if len(self.dims) < 2:
            raise ArgumentError('Campaign states need two or more'
                                ' subsystems.')
        if self.lhs_mode not in LHS_MODES:
            raise ArgumentError('Unknown LHS mode "%s".' % self.lhs_mode)
        for name in self.inequalities:
            for exponent in self.exponents_for(name):
                if exponent is not None and not (
                        0 <= exponent <= (2 if CHECKS[name][1] == 'alpha'
                                          else 1)):
                    raise ArgumentError('Exponent %s is out of range for'
                                        ' "%s".' % (exponent, name,))

    def exponents_for(self, name):
        kind = CHECKS[name][1]
        if kind is None:
            return [None]
        return list(self.exponents or DEFAULT_GRIDS[kind])

    def to_dict(self):
        return {
            'dims': list(self.dims), 'count': self.count, 'seed': self.seed,
            'inequalities': list(self.inequalities),
            'exponents': (None if self.exponents is None
                          else list(self.exponents)),
            'lhs_mode': self.lhs_mode, 'cut': self.part.cut,
            'output': self.output,
        }


class CampaignSummary(object):
    """
    Per inequality counts: checked == held + condition_failed +
    tentative_violations + confirmed_violations. Items that raised are
    counted in `errors` only.
    """
    def __init__(self, config):
        self.config = config
        self.errors = 0
        self.inequalities = dict(
            (name, {'checked': 0, 'held': 0, 'condition_failed': 0,
                    'tentative_violations': 0,
                    'confirmed_violations': 0, 'min_slack': None,
                    'mean_slack': None, '_slacks': []})
            for name in config.inequalities)

    def add(self, report):
        row = self.inequalities[report.inequality_id]
        row['checked'] += 1
        row[{'held': 'held', 'condition-failed': 'condition_failed',
             'tentative': 'tentative_violations',
             'confirmed': 'confirmed_violations'}[report.status]] += 1
        row['_slacks'].append(report.slack)

    @property
    def confirmed_violations(self):
        return sum(i['confirmed_violations']
                   for i in self.inequalities.values())

    def to_dict(self):
        inequalities = {}
        for name, row in self.inequalities.items():
            slacks = row['_slacks']
            row = dict((k, v) for k, v in row.items() if k != '_slacks')
            if slacks:
                row['min_slack'] = min(slacks)
                row['mean_slack'] = sum(slacks) / len(slacks)
            inequalities[name] = row
        return {
            'inequalities': inequalities,
            'errors': self.errors,
            'environment': {
                'seed': self.config.seed,
                'version': get_version(),
                'tolerances': self.config.policy.to_dict(),
                'optimizer': self.config.settings.to_dict(),
                'config': self.config.to_dict(),
            },
        }

    def to_json(self):
        return json.dumps(self.to_dict(), cls=ReportEncoder, sort_keys=True,
                          indent=2)


# Campaigns
# ---------
class BaseCampaign(object):
    lockable = True     # one campaign per output directory at the same time
    lockname = None     # lock file name, default "classname.lock"
    locktime = 60*60*4  # max lock time period
    loggers = None

    class Meta:
        loggers = [ConsoleLogger]

    def __init__(self, config, loggers=None):
        self.config = config
        self.meta = self.Meta()
        self.loggers = (list(loggers) if loggers is not None else
                        [i() for i in getattr(self.meta, 'loggers',
                                              [ConsoleLogger])])
        self.directory = config.output or settings.DATA_DIR
        if config.output:
            self.loggers.append(ReportFileLogger(config.output))
        self.summary = None

    def log(self, value):
        for i in self.loggers:
            i.log(value)

    def record(self, data):
        for i in self.loggers:
            i.record(data)

    def firstlog(self, name=None, options=True):
        for i in self.loggers:
            i.firstlog(name=name, options=options)

    def finallog(self, name=None, status=True):
        for i in self.loggers:
            i.finallog(name=name, status=status)

    def get_items(self):
        raise NotImplementedError

    def run_item(self, item):
        raise NotImplementedError

    def item_status(self, records):
        raise NotImplementedError

    def visualize_struct(self):
        return 'Campaign "%s"' % type(self).__name__

    def progress(self, task):
        self.log(PROGRESS['error'] if task.error else
                 PROGRESS[self.item_status(task.result)])

    def reduce(self, tasks):
        raise NotImplementedError

    def write_summary(self):
        if self.config.output:
            path = os.path.join(self.config.output, 'summary.json')
            with open(path, 'w', encoding='utf-8') as f:
                f.write(self.summary.to_json())

    def run(self):
        options = self.config.to_dict()
        clsname = type(self).__name__
        status = 0
        locker = None

        self.log('%s\n%s P O L Y E N T %s\n%s\n'
                 '\nStarting campaign "%s".'
                 '\n- datetime      %s'
                 '\n- class         %s'
                 '\n- datadir       %s'
                 '\n- options       %s'
                 '\n- struct\n  %s'
                 % ('-'*79, '-'*32, '-'*32, '-'*79,
                    clsname, now(), self.__class__, self.directory,
                    json.dumps(options, indent=2, ensure_ascii=False),
                    '\n  '.join(self.visualize_struct().splitlines()),))

        try:
            locker = self.lockname or '%s.lock' % clsname.lower()
            locker = (FileLock(self.directory, locktime=self.locktime,
                               lockname=locker)
                      if self.lockable else None)
            if locker and not locker.lock():
                raise LockedCampaignException
            elif locker:
                self.log('\n\n%s\n-- L O C K E D %s seconds --\n%s' % (
                    '-'*79, '{:>53.0f}'.format(locker.check(astime=True)),
                    '-'*79))

            self.firstlog(name=clsname, options=options)
            signals.campaign_pre_launch.send(sender=type(self),
                                             campaign=self)

            self.log('\n\n%s ITEMS Queue %s\n' % ('-'*33, '-'*33))
            runner = ThreadedRunner(threads=self.config.threads,
                                    callback=self.progress)
            for item in self.get_items():
                runner.add(self.run_item, item)
            tasks = runner.run()

            for task in tasks:
                if task.error:
                    self.record({'index': task.index,
                                 'error': exception_to_text(task.error)})
                else:
                    for data in task.result:
                        self.record(data)
                    warned = sorted(set(
                        name for data in task.result
                        for name in data.get('warnings') or ()))
                    if warned:
                        self.log('\nWarning: state %s, optimizer did not'
                                 ' converge on %s.' % (task.index,
                                                         ', '.join(warned)))

            self.summary = self.reduce(tasks)
            self.write_summary()
            if self.summary.errors:
                status = 1

            signals.campaign_post_launch.send(sender=type(self),
                                              campaign=self,
                                              summary=self.summary)

        except LockedCampaignException:
            self.log('\n\n%s\n%s C A M P A I G N   I S   L O C K E D %s\n%s\n'
                     '// Seconds to unlock%s //\n%s' %
                     ('/'*79, '/'*20, '/'*21, '/'*79,
                      '{:.>56.0f}'.format(locker.check(astime=True) or 0),
                      '/'*79,))
            status = 1
            locker = None

        except Exception as e:
            self.log('\n\n%s\n%s R A I Z E D   E X C E P T I O N %s\n%s'
                     '\n\nCampaign "%s" stopped with the following exception'
                     ' and traceback:\n%s\n%s\n%s' %
                     ('*'*79, '*'*23, '*'*23, '*'*79, clsname,
                      '-'*79, exception_to_text(e), '-'*79,))
            status = 1

        finally:
            if locker:
                self.log('\n\n%s\n-- U N L O C K E D %s seconds --\n%s' % (
                    '-'*79, '{:>49.0f}'.format(
                        locker.check(astime=True, remained=False) or 0),
                    '-'*79))
                locker.unlock()

        self.log('\n\n%s\nFINISHED at "%s" with status "%s" (%s)\n' % (
            '-'*8, now(), status, 'FAIL' if status else 'SUCCESS'))
        self.finallog(name=clsname, status=status)
        return status


class RandomCampaign(BaseCampaign):
    """
    Haar random states of config.dims, state k seeded by (seed, k); every
    configured inequality at every configured exponent on each state, the
    measures of a state computed once.
    """
    def get_items(self):
        return range(self.config.count)

    def visualize_struct(self):
        config = self.config
        return ('Campaign "%s"\n- states:\n    %s x %s, seed %s, cut %s\n'
                '- checks:\n    %s' % (
                    type(self).__name__, config.count,
                    'x'.join(map(str, config.dims)), config.seed,
                    config.part.cut,
                    '\n    '.join('%s %s' % (name, [
                        i for i in config.exponents_for(name)
                        if i is not None] or '') for name in
                        config.inequalities),))

    def run_item(self, index):
        config = self.config
        psi = haar_random_pure(config.dims, (config.seed, index))
        inputs = CheckInputs(psi, config.part, config.lhs_mode,
                             config.settings, config.policy)

        records = []
        for name in config.inequalities:
            for exponent in config.exponents_for(name):
                report = run_check(name, psi, exponent=exponent,
                                   inputs=inputs)
                records.append(dict(report.to_dict(), index=index,
                                    seed=[config.seed, index],
                                    status=report.status,
                                    warnings=list(inputs.warnings)))
        return records

    def item_status(self, records):
        statuses = set(i['status'] for i in records)
        for status in ('confirmed', 'tentative', 'condition-failed'):
            if status in statuses:
                return status
        return 'held'

    def reduce(self, tasks):
        summary = CampaignSummary(self.config)
        for task in tasks:
            if task.error:
                summary.errors += 1
                continue
            for data in task.result:
                summary.add(PolygamyReport.from_dict(data))
        return summary

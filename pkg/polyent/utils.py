import os
import re
import time
import queue
import threading
import traceback

import numpy as np
from django.core.serializers.json import DjangoJSONEncoder

from .exceptions import ArgumentError


PARAM_REGEX = re.compile(r"""([a-z0-9_\-\.\:]+) \s*=\s* ("|')? (?(2)"""
                         r""" (?:(.+?)(?<!\\)\2) | ([^\s'"]+))""", re.I | re.X)
PARAM_CONSTANTS = {'None': None, 'True': True, 'False': False}


def _param_value(value):
    if value in PARAM_CONSTANTS:
        return PARAM_CONSTANTS[value]
    for kind in (int, float):
        try:
            return kind(value)
        except ValueError:
            pass
    return value


def params_parser(params):
    """
    Parse html-like params into dict:
        "optimizer.restarts=32 policy.slack=1e-9 note='a b' flag=True"
    Unquoted None, True, False, integers and floats become python values,
    quoted values stay strings, so "a=1 b='1'" -> {'a': 1, 'b': '1'}.
    """
    params = (re.findall(PARAM_REGEX, params)
              if isinstance(params, str) else [])
    return dict((str(i[0]), i[2] if i[1] else _param_value(i[3]))
                for i in params)


def params_section(params, prefix):
    # {'optimizer.restarts': 4, 'seed': 1} -> {'restarts': 4} for "optimizer"
    prefix = '%s.' % prefix
    return dict((k[len(prefix):], v) for k, v in (params or {}).items()
                if k.startswith(prefix))


def split_numbers(value):
    """Comma separated floats: "0.5,1,1.5" -> [0.5, 1.0, 1.5]."""
    if isinstance(value, (list, tuple)):
        return [float(i) for i in value]
    try:
        return [float(i) for i in str(value).split(',') if i.strip()]
    except ValueError:
        raise ArgumentError('Comma separated numbers expected, got "%s".'
                            % value)


def format_number(value):
    # locale independent, 9 significant digits
    return '%.9g' % value


def exception_to_text(e, limit=None):
    if isinstance(getattr(e, '_exception_lines', None), str):
        return e._exception_lines

    lines = traceback.format_exception(type(e), e, e.__traceback__, limit)
    e._exception_lines = ''.join(lines).rstrip()
    return e._exception_lines


class ReportEncoder(DjangoJSONEncoder):
    """Django JSON encoder which also knows numpy scalars and arrays."""
    def default(self, o):
        if isinstance(o, np.integer):
            return int(o)
        if isinstance(o, np.floating):
            return float(o)
        if isinstance(o, np.bool_):
            return bool(o)
        if isinstance(o, np.ndarray):
            return o.tolist()
        if isinstance(o, complex):
            return [o.real, o.imag]
        return super(ReportEncoder, self).default(o)


class FileLock(object):
    """
    Lock file in `basedir`. The file is created atomically, a lock older
    than `locktime` seconds is treated as abandoned and taken over.
    """
    locktime = 60*60*4
    lockname = '.lock'

    def __init__(self, basedir, locktime=None, lockname=None):
        self.basedir = basedir

        if locktime:
            self.locktime = locktime
        if lockname:
            self.lockname = lockname

    def lock(self, force=False):
        lockname = self.get_name()
        os.makedirs(self.basedir, exist_ok=True)

        if force or (os.path.exists(lockname) and not self.check()):
            self.unlock()
        try:
            os.close(os.open(lockname, os.O_CREAT | os.O_EXCL | os.O_WRONLY))
        except FileExistsError:
            return False
        return True

    def unlock(self):
        try:
            os.unlink(self.get_name())
        except FileNotFoundError:
            pass

    def check(self, astime=False, remained=True):
        try:
            elapsed = time.time() - os.path.getmtime(self.get_name())
        except OSError:
            return False

        if elapsed >= self.locktime:
            return False
        return ((self.locktime - elapsed if remained else elapsed)
                if astime else True)

    def get_name(self):
        return os.path.abspath(os.path.join(self.basedir, self.lockname))


# Threaded task runner
# --------------------
class RunnerTask(object):
    def __init__(self, index, func, args=None, kwargs=None):
        self.index = index
        self.func = func
        self.args = args or ()
        self.kwargs = kwargs or {}
        self.result = None
        self.error = None

    def execute(self):
        try:
            self.result = self.func(*self.args, **self.kwargs)
        except Exception as e:
            exception_to_text(e)
            self.error = e
        return self

    def __str__(self):
        return 'RunnerTask (%s, %s)' % (self.index,
                                        'error' if self.error else 'ok')


class RunnerThread(threading.Thread):
    def __init__(self, tasks, report, lock, callback=None):
        super(RunnerThread, self).__init__()
        self.queue = tasks
        self.report = report
        self.lock = lock
        self.callback = callback
        self.daemon = True

    def run(self):
        while True:
            try:
                task = self.queue.get_nowait()
            except queue.Empty:
                return

            task.execute()
            with self.lock:
                self.report[task.index] = task
                self.callback and self.callback(task)
            self.queue.task_done()


class ThreadedRunner(object):
    """
    Run independent tasks on a pool of threads.

    runner = ThreadedRunner(threads=4)
    runner.add(func, arg1, arg2)            # task index 0
    runner.add(func, arg3, arg4)            # task index 1
    tasks = runner.run()                    # list ordered by task index

    Results never depend on completion order: tasks are returned by index,
    exceptions are stored on the task (task.error) instead of raised.
    `callback(task)` is called under a lock, so it may write to a shared
    log. With threads == 1 tasks run inline in the calling thread.
    """
    runner_thread_class = RunnerThread

    def __init__(self, threads=1, callback=None):
        self.queue = queue.Queue(0)
        self.tasks = []
        self.report = {}
        self.threads = max(int(threads or 1), 1)
        self.callback = callback
        self.lock = threading.Lock()

    def add(self, func, *args, **kwargs):
        task = RunnerTask(len(self.tasks), func, args, kwargs)
        self.tasks.append(task)
        return task

    def run(self):
        if self.threads == 1 or len(self.tasks) < 2:
            for task in self.tasks:
                task.execute()
                self.report[task.index] = task
                self.callback and self.callback(task)
            return [self.report[i] for i in range(len(self.tasks))]

        for task in self.tasks:
            self.queue.put(task)
        pool = [self.runner_thread_class(self.queue, self.report, self.lock,
                                         self.callback)
                for i in range(min(self.threads, len(self.tasks)))]
        for thread in pool:
            thread.start()
        for thread in pool:
            thread.join()
        return [self.report[i] for i in range(len(self.tasks))]

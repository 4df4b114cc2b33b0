class lazy:
  """computes an attribute on first access and caches it on the instance"""
  __slots__ = 'method', 'name'

  def __init__(self, method):
    self.method = method
    self.name = method.__name__

  def __get__(self, obj, cls):
    if obj is None:
      return self
    value = self.method(obj)
    setattr(obj, self.name, value)
    return value

from hankelring.utils.configuration import ConfigurationManager
